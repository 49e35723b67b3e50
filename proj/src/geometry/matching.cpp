// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>

#include "drawparse/geometry.hpp"

namespace drawparse {
namespace {

std::vector<std::size_t> confidence_order(std::span<const Detection> preds) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].confidence > preds[b].confidence;
  });
  return order;
}

void check_threshold(double t) {
  if (!(t > 0 && t <= 1)) {
    throw Error(ErrorCode::InvalidArgument, "IoU threshold must be in (0, 1]");
  }
}

struct Ranked {
  double confidence;
  std::size_t image;
  std::size_t index;
};

}  // namespace

MatchAssignment match_detections(std::span<const Detection> preds,
                                 std::span<const Detection> gts,
                                 double iouThreshold) {
  check_threshold(iouThreshold);
  MatchAssignment out;
  std::vector<bool> gtUsed(gts.size(), false);
  std::vector<bool> predUsed(preds.size(), false);
  for (std::size_t p : confidence_order(preds)) {
    double best = -1;
    std::size_t bestGt = 0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (gtUsed[g]) continue;
      const double iou = rotated_iou(preds[p].box, gts[g].box);
      if (iou >= iouThreshold && iou > best) {
        best = iou;
        bestGt = g;
      }
    }
    if (best >= 0) {
      gtUsed[bestGt] = true;
      predUsed[p] = true;
      out.pairs.push_back({p, bestGt, best});
    }
  }
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (!predUsed[p]) out.unmatchedPred.push_back(p);
  }
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (!gtUsed[g]) out.unmatchedGt.push_back(g);
  }
  return out;
}

long long ConfusionMatrix::total() const noexcept {
  long long t = 0;
  for (const auto& row : counts) {
    for (long long v : row) t += v;
  }
  return t;
}

std::array<std::array<double, ConfusionMatrix::kSize>, ConfusionMatrix::kSize>
ConfusionMatrix::normalized() const noexcept {
  std::array<std::array<double, kSize>, kSize> out{};
  for (std::size_t r = 0; r < kSize; ++r) {
    long long sum = 0;
    for (long long v : counts[r]) sum += v;
    if (sum == 0) continue;
    for (std::size_t c = 0; c < kSize; ++c) {
      out[r][c] = static_cast<double>(counts[r][c]) / static_cast<double>(sum);
    }
  }
  return out;
}

ConfusionMatrix confusion_matrix(const MatchAssignment& a,
                                 std::span<const Detection> preds,
                                 std::span<const Detection> gts) {
  ConfusionMatrix m;
  for (const auto& pair : a.pairs) {
    m.counts[ordinal(gts[pair.gt].category)][ordinal(preds[pair.pred].category)]++;
  }
  for (std::size_t g : a.unmatchedGt) {
    m.counts[ordinal(gts[g].category)][ConfusionMatrix::kBackground]++;
  }
  for (std::size_t p : a.unmatchedPred) {
    m.counts[ConfusionMatrix::kBackground][ordinal(preds[p].category)]++;
  }
  return m;
}

double average_precision(std::span<const ScoredImage> images, Category category,
                         double iouThreshold) {
  check_threshold(iouThreshold);
  std::vector<Ranked> ranked;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t p = 0; p < images[i].preds.size(); ++p) {
      if (images[i].preds[p].category == category) {
        ranked.push_back({images[i].preds[p].confidence, i, p});
      }
    }
    for (const auto& g : images[i].gts) positives += g.category == category;
  }
  if (positives == 0) return 0.0;
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return a.confidence > b.confidence;
  });

  std::vector<std::vector<bool>> used(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) used[i].assign(images[i].gts.size(), false);

  std::vector<double> precision, recall;
  std::size_t tp = 0, fp = 0;
  for (const auto& r : ranked) {
    const auto& img = images[r.image];
    const auto& pred = img.preds[r.index];
    double best = -1;
    std::size_t bestGt = 0;
    for (std::size_t g = 0; g < img.gts.size(); ++g) {
      if (used[r.image][g] || img.gts[g].category != category) continue;
      const double iou = rotated_iou(pred.box, img.gts[g].box);
      if (iou >= iouThreshold && iou > best) {
        best = iou;
        bestGt = g;
      }
    }
    if (best >= 0) {
      used[r.image][bestGt] = true;
      ++tp;
    } else {
      ++fp;
    }
    precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
    recall.push_back(static_cast<double>(tp) / static_cast<double>(positives));
  }
  // Precision envelope, non-increasing from the right.
  for (std::size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double sum = 0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return sum / 101.0;
}

double average_precision(std::span<const Detection> preds,
                         std::span<const Detection> gts, Category category,
                         double iouThreshold) {
  const ScoredImage img{{preds.begin(), preds.end()}, {gts.begin(), gts.end()}};
  return average_precision(std::span<const ScoredImage>(&img, 1), category, iouThreshold);
}

double mean_average_precision(std::span<const ScoredImage> images,
                              double iouThreshold) {
  double sum = 0;
  int classes = 0;
  for (Category c : kAllCategories) {
    bool present = false;
    for (const auto& img : images) {
      for (const auto& g : img.gts) present = present || g.category == c;
    }
    if (!present) continue;
    sum += average_precision(images, c, iouThreshold);
    ++classes;
  }
  return classes ? sum / classes : 0.0;
}

double map_range(std::span<const ScoredImage> images,
                 std::span<const double> thresholds) {
  if (thresholds.empty()) {
    throw Error(ErrorCode::InvalidArgument, "threshold list must not be empty");
  }
  double sum = 0;
  for (double t : thresholds) sum += mean_average_precision(images, t);
  return sum / static_cast<double>(thresholds.size());
}

double map_range(std::span<const Detection> preds, std::span<const Detection> gts,
                 std::span<const double> thresholds) {
  const ScoredImage img{{preds.begin(), preds.end()}, {gts.begin(), gts.end()}};
  return map_range(std::span<const ScoredImage>(&img, 1), thresholds);
}

std::vector<double> coco_thresholds() {
  std::vector<double> t;
  for (int k = 0; k < 10; ++k) t.push_back((50 + 5 * k) / 100.0);
  return t;
}

}  // namespace drawparse
