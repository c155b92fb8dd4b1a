#pragma once

#include <stdexcept>
#include <string>

namespace qgr {

enum class Errc {
  invalid_config,
  generation_failed,
  unknown_node,
  unstable,
  invalid_rate,
  invalid_gamma,
  disconnected,
  no_route,
  bad_cut_point,
  not_permutation,
  duplicate_node,
  mutation_rejected,
  degenerate_bandwidth,
  storage_error,
};

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::invalid_config: return "invalid_config";
    case Errc::generation_failed: return "generation_failed";
    case Errc::unknown_node: return "unknown_node";
    case Errc::unstable: return "unstable";
    case Errc::invalid_rate: return "invalid_rate";
    case Errc::invalid_gamma: return "invalid_gamma";
    case Errc::disconnected: return "disconnected";
    case Errc::no_route: return "no_route";
    case Errc::bad_cut_point: return "bad_cut_point";
    case Errc::not_permutation: return "not_permutation";
    case Errc::duplicate_node: return "duplicate_node";
    case Errc::mutation_rejected: return "mutation_rejected";
    case Errc::degenerate_bandwidth: return "degenerate_bandwidth";
    case Errc::storage_error: return "storage_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace qgr
