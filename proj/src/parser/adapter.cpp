// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <map>

#include <json.hpp>

#include "drawparse/parser.hpp"

namespace drawparse {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

[[noreturn]] void bad_output(const std::string& msg) {
  throw Error(ErrorCode::SchemaViolation, "adapter output rejected: " + msg);
}

void ignore_sigpipe() {
  static const bool once = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

class ProcessEndpoint final : public AdapterEndpoint {
 public:
  ProcessEndpoint(int readFd, int writeFd, pid_t pid, std::chrono::milliseconds timeout)
      : AdapterEndpoint(readFd, writeFd, timeout), pid_(pid) {}

  ~ProcessEndpoint() override {
    ::close(writeFd_);
    ::close(readFd_);
    // Give a well-behaved child a moment to exit on EOF before killing it.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) == pid_) return;
      ::usleep(2000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }

 private:
  pid_t pid_;
};

class SocketEndpoint final : public AdapterEndpoint {
 public:
  SocketEndpoint(int fd, std::chrono::milliseconds timeout)
      : AdapterEndpoint(fd, fd, timeout) {}
  ~SocketEndpoint() override { ::close(readFd_); }
};

std::unique_ptr<AdapterEndpoint> spawn(const std::string& command,
                                       std::chrono::milliseconds timeout);
std::unique_ptr<AdapterEndpoint> connect_tcp(const std::string& hostport,
                                             std::chrono::milliseconds timeout);

}  // namespace

// --- encoding --------------------------------------------------------------

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  if (i + 1 == bytes.size()) {
    const unsigned v = bytes[i] << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == bytes.size()) {
    const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::string encode_request(const ParseRequest& r) {
  Json j{{"id", r.id}, {"category", std::string(category_name(r.category))}};
  if (const auto* text = std::get_if<std::string>(&r.payload)) {
    j["text"] = *text;
  } else {
    j["image"] = base64_encode(std::get<std::vector<std::uint8_t>>(r.payload));
  }
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

ParseResult decode_response(std::string_view line, Category expected) {
  Json j;
  try {
    j = Json::parse(line.begin(), line.end());
  } catch (const nlohmann::json::parse_error&) {
    bad_output("response is not JSON");
  }
  if (!j.is_object()) bad_output("response is not an object");
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) bad_output("response has no string id");
  ParseResult result;
  result.id = id->get<std::string>();
  const bool hasRecord = j.contains("record");
  const bool hasError = j.contains("error");
  if (hasRecord == hasError) bad_output("response needs exactly one of record/error");
  if (hasError) {
    const Json& e = j.at("error");
    result.error = e.is_string() ? e.get<std::string>() : e.dump();
    if (result.error.empty()) result.error = "adapter reported an error";
    return result;
  }
  const Json& rec = j.at("record");
  if (!rec.is_object()) bad_output("record is not an object");
  AnnotationRecord record;
  try {
    record = parse_patch_label(rec.dump());
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaViolation, "adapter output rejected: " + e.detail(),
                e.path());
  }
  if (category_of(record) != expected) {
    bad_output("record category " + std::string(category_name(category_of(record))) +
               " does not match requested " + std::string(category_name(expected)));
  }
  result.record = std::move(record);
  return result;
}

// --- channels --------------------------------------------------------------

std::unique_ptr<AdapterEndpoint> AdapterEndpoint::open(std::string_view spec,
                                                       std::chrono::milliseconds timeout) {
  ignore_sigpipe();
  if (spec.rfind("exec:", 0) == 0) return spawn(std::string(spec.substr(5)), timeout);
  if (spec.rfind("tcp://", 0) == 0) return connect_tcp(std::string(spec.substr(6)), timeout);
  throw Error(ErrorCode::InvalidArgument,
              "adapter endpoint must be exec:<command> or tcp://host:port, got '" +
                  std::string(spec) + "'");
}

namespace {

std::unique_ptr<AdapterEndpoint> spawn(const std::string& command,
                                       std::chrono::milliseconds timeout) {
  if (command.empty()) throw Error(ErrorCode::AdapterUnavailable, "empty adapter command");
  int toChild[2], fromChild[2];
  if (::pipe2(toChild, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::AdapterUnavailable, std::strerror(errno));
  }
  if (::pipe2(fromChild, O_CLOEXEC) != 0) {
    ::close(toChild[0]);
    ::close(toChild[1]);
    throw Error(ErrorCode::AdapterUnavailable, std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {toChild[0], toChild[1], fromChild[0], fromChild[1]}) ::close(fd);
    throw Error(ErrorCode::AdapterUnavailable, std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(toChild[0], STDIN_FILENO);
    ::dup2(fromChild[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(toChild[0]);
  ::close(fromChild[1]);
  ::fcntl(toChild[1], F_SETFL, ::fcntl(toChild[1], F_GETFL) | O_NONBLOCK);
  return std::make_unique<ProcessEndpoint>(fromChild[0], toChild[1], pid, timeout);
}

std::unique_ptr<AdapterEndpoint> connect_tcp(const std::string& hostport,
                                             std::chrono::milliseconds timeout) {
  const std::size_t colon = hostport.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == hostport.size()) {
    throw Error(ErrorCode::InvalidArgument, "tcp endpoint needs host:port");
  }
  const std::string host = hostport.substr(0, colon);
  const std::string port = hostport.substr(colon + 1);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res); rc != 0) {
    throw Error(ErrorCode::AdapterUnavailable, std::string("resolve: ") + ::gai_strerror(rc));
  }
  int fd = -1;
  std::string lastError = "no address";
  for (addrinfo* a = res; a; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    lastError = std::strerror(errno);
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw Error(ErrorCode::AdapterUnavailable, "connect " + hostport + ": " + lastError);
  ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
  return std::make_unique<SocketEndpoint>(fd, timeout);
}

}  // namespace

std::vector<ParseResult> AdapterEndpoint::parse_batch(std::span<const ParseRequest> requests) {
  std::map<std::string, std::size_t> pending;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!pending.emplace(requests[i].id, i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate request id '" + requests[i].id + "'");
    }
  }
  std::string out;
  for (const auto& r : requests) out += encode_request(r) + "\n";
  std::size_t written = 0;
  std::vector<std::optional<ParseResult>> results(requests.size());
  std::size_t remaining = requests.size();

  auto deadline = Clock::now() + timeout_;
  while (remaining > 0) {
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {readFd_, POLLIN, 0};
    const bool writing = written < out.size();
    if (writing) {
      if (writeFd_ == readFd_) {
        fds[0].events |= POLLOUT;
      } else {
        fds[n++] = {writeFd_, POLLOUT, 0};
      }
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) {
      throw Error(ErrorCode::AdapterTimeout,
                  "no response within " + std::to_string(timeout_.count()) + " ms");
    }
    const int rc = ::poll(fds, n, static_cast<int>(left.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::AdapterUnavailable, std::strerror(errno));
    }
    if (rc == 0) continue;  // deadline check at the top of the loop
    for (nfds_t k = 0; k < n; ++k) {
      if (writing && (fds[k].revents & POLLOUT) && fds[k].fd == writeFd_) {
        const ssize_t w = ::write(writeFd_, out.data() + written, out.size() - written);
        if (w < 0) {
          if (errno == EAGAIN || errno == EINTR) continue;
          throw Error(ErrorCode::AdapterUnavailable,
                      std::string("adapter write failed: ") + std::strerror(errno));
        }
        written += static_cast<std::size_t>(w);
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[65536];
      const ssize_t r = ::read(readFd_, buf, sizeof buf);
      if (r < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw Error(ErrorCode::AdapterUnavailable, std::strerror(errno));
      }
      if (r == 0) throw Error(ErrorCode::AdapterUnavailable, "adapter closed the channel");
      buffer_.append(buf, static_cast<std::size_t>(r));
      deadline = Clock::now() + timeout_;
      std::size_t nl;
      while ((nl = buffer_.find('\n')) != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        // Find the id first to learn the expected category.
        std::string id;
        try {
          const Json j = Json::parse(line);
          if (j.is_object() && j.contains("id") && j.at("id").is_string()) {
            id = j.at("id").get<std::string>();
          }
        } catch (const nlohmann::json::exception&) {
          bad_output("response is not JSON");
        }
        auto it = pending.find(id);
        if (it == pending.end()) bad_output("response for unknown id '" + id + "'");
        const std::size_t idx = it->second;
        results[idx] = decode_response(line, requests[idx].category);
        pending.erase(it);
        --remaining;
      }
    }
  }
  std::vector<ParseResult> ordered;
  ordered.reserve(results.size());
  for (auto& r : results) ordered.push_back(std::move(*r));
  return ordered;
}

ParseResult adapter_parse(const ParseRequest& request, AdapterEndpoint& endpoint) {
  auto results = endpoint.parse_batch(std::span<const ParseRequest>(&request, 1));
  return std::move(results.front());
}

}  // namespace drawparse
