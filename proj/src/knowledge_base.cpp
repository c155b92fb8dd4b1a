#include "qgr/knowledge_base.hpp"

#include <fstream>

#include "json.hpp"

namespace qgr {

using nlohmann::json;

void KnowledgeBase::record(const KnowledgeBaseEntry& entry) {
  if (entry.path.empty()) fail(Errc::invalid_config, "entry path is empty");
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) fail(Errc::storage_error, "cannot open " + path_ + " for append");
  json line{{"topology_digest", entry.topology_digest},
            {"source", entry.source},
            {"destination", entry.destination},
            {"path", entry.path},
            {"bottleneck", entry.bottleneck},
            {"timestamp", entry.timestamp}};
  out << line.dump() << "\n";
  if (!out) fail(Errc::storage_error, "append failed: " + path_);
}

std::optional<KnowledgeBaseEntry> KnowledgeBase::lookup(const std::string& topology_digest,
                                                        NodeId source, NodeId destination) const {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return std::nullopt; // never written to

  std::optional<KnowledgeBaseEntry> best;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      fail(Errc::storage_error, "corrupt knowledge base line in " + path_);
    }
    KnowledgeBaseEntry e;
    try {
      j.at("topology_digest").get_to(e.topology_digest);
      j.at("source").get_to(e.source);
      j.at("destination").get_to(e.destination);
      j.at("path").get_to(e.path);
      j.at("bottleneck").get_to(e.bottleneck);
      j.at("timestamp").get_to(e.timestamp);
    } catch (const json::exception&) {
      fail(Errc::storage_error, "corrupt knowledge base line in " + path_);
    }
    if (e.topology_digest != topology_digest || e.source != source || e.destination != destination)
      continue;
    if (!best || e.bottleneck > best->bottleneck) best = std::move(e);
  }
  return best;
}

}  // namespace qgr
