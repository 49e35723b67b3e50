#!/usr/bin/env python3
# Copyright 2026 The drawparse Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates tests/fixtures/shaft: a synthetic shaft drawing, its OBB
labels and one transcript per detection."""

import math
import pathlib
import sys

from PIL import Image, ImageDraw, ImageFont

W, H = 1200, 800
FONT = "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf"

CLASS_IDS = {
    "GDT": 0, "GeneralTolerance": 1, "Measure": 2, "Material": 3, "Note": 4,
    "Radius": 5, "SurfaceRoughness": 6, "Thread": 7, "TitleBlock": 8,
}

# (category, centre, angle in degrees CCW, transcript)
ANNOTATIONS = [
    ("Material", (1010, 700), 0, "C-45"),
    ("Thread", (300, 120), 0, "6×M5 TAP THRU"),
    ("GDT", (800, 150), 0,
     "⌖ | Ø0.020 | A | B(M) | C(M)\n⏤ | 0.020 | A\n⌭ | 0.020\n⏥ | 0.020"),
    ("SurfaceRoughness", (560, 260), 0, "Ra 0.8 µm"),
    ("Measure", (600, 560), 0, "@feature: Shaft Length\n81 ±0.05 mm"),
    ("Measure", (140, 380), 90, "@feature: Diameter\nØ28 ±0.05 mm"),
    ("Measure", (880, 430), 0, "@feature: Slot\n2×4 mm"),
    ("TitleBlock", (1010, 640), 0,
     "Designer: Shubham\nDate: 09.06.2020\nDrawing Name: Admission Shaft"),
    ("Note", (260, 690), 0,
     "All dimensions are in mm.\nSharp edges treat 0.5 chamfer.\n"
     "Unspecified Tolerance 0.050 mm.\nGrinding must be done after plating."),
]


def render_text(text, font):
    probe = ImageDraw.Draw(Image.new("L", (1, 1)))
    box = probe.multiline_textbbox((0, 0), text, font=font, spacing=4)
    w, h = box[2] - box[0] + 12, box[3] - box[1] + 12
    tile = Image.new("L", (w, h), 255)
    d = ImageDraw.Draw(tile)
    d.multiline_text((6 - box[0], 6 - box[1]), text, fill=0, font=font, spacing=4)
    d.rectangle([0, 0, w - 1, h - 1], outline=0)
    return tile


def corners(cx, cy, w, h, deg):
    # Image y points down; a CCW angle on screen is negative in maths terms.
    t = -math.radians(deg)
    ux, uy = math.cos(t) * w / 2, math.sin(t) * w / 2
    vx, vy = -math.sin(t) * h / 2, math.cos(t) * h / 2
    return [(cx - ux - vx, cy - uy - vy), (cx + ux - vx, cy + uy - vy),
            (cx + ux + vx, cy + uy + vy), (cx - ux + vx, cy - uy + vy)]


def main(out):
    out = pathlib.Path(out)
    (out / "transcripts").mkdir(parents=True, exist_ok=True)
    font = ImageFont.truetype(FONT, 16)
    page = Image.new("L", (W, H), 255)
    draw = ImageDraw.Draw(page)
    # Shaft outline.
    draw.rectangle([250, 330, 950, 430], outline=0, width=3)
    draw.line([200, 380, 1000, 380], fill=0, width=1)
    lines = []
    for i, (cat, (cx, cy), deg, text) in enumerate(ANNOTATIONS):
        shown = text.split("\n", 1)[1] if text.startswith("@feature:") else text
        tile = render_text(shown, font)
        w, h = tile.size
        rotated = tile.rotate(deg, expand=True, fillcolor=255)
        page.paste(rotated, (int(cx - rotated.width / 2), int(cy - rotated.height / 2)))
        pts = corners(cx, cy, w, h, deg)
        coords = " ".join(f"{x / W:.6f} {y / H:.6f}" for x, y in pts)
        lines.append(f"{CLASS_IDS[cat]} {coords}")
        (out / "transcripts" / f"{i}.txt").write_text(text + "\n", encoding="utf-8")
    page.save(out / "shaft.png")
    (out / "shaft.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/shaft")
