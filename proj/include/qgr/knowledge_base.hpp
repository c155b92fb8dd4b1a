#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgr/topology.hpp"

namespace qgr {

struct KnowledgeBaseEntry {
  std::string topology_digest;
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<NodeId> path;
  double bottleneck = 0.0;
  std::int64_t timestamp = 0; // seconds since epoch

  bool operator==(const KnowledgeBaseEntry&) const = default;
};

// Append-only store of best discovered paths, one JSON object per line.
class KnowledgeBase {
 public:
  explicit KnowledgeBase(std::string file_path) : path_(std::move(file_path)) {}

  const std::string& file_path() const { return path_; }

  void record(const KnowledgeBaseEntry& entry); // throws storage_error

  // Highest-bottleneck entry for (digest, source, destination), if any.
  std::optional<KnowledgeBaseEntry> lookup(const std::string& topology_digest, NodeId source,
                                           NodeId destination) const;

 private:
  std::string path_;
};

}  // namespace qgr
