#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "congesim/net/adversary.hpp"
#include "congesim/net/graph.hpp"
#include "congesim/net/program.hpp"

// Execution transcript of one engine run.

namespace congesim::net {

struct CorruptionRecord {
  int round = 0;
  DirEdgeId dir_edge = -1;
  Slot sent, delivered;
};

struct RoundStats {
  int messages = 0;        // non-empty directed slots sent
  int controlled_edges = 0;
  int corrupted_messages = 0;  // delivered != sent (directed)
};

struct Execution {
  int rounds = 0;
  int bandwidth = 0;
  uint64_t seed = 0;

  std::vector<RoundStats> round_stats;
  std::vector<CorruptionRecord> corruptions;
  std::vector<TapRecord> taps;                  // eavesdropper view
  std::vector<std::vector<EdgeId>> controlled;  // F_i per round

  // Per directed edge: number of rounds carrying a non-empty word.
  std::vector<int> dir_edge_load;
  // Full per-round sent/delivered words (recorded when record_messages).
  std::vector<std::vector<Slot>> sent_log, delivered_log;

  std::vector<std::vector<uint64_t>> outputs;  // per node

  uint64_t total_corrupted_messages = 0;
  int max_edge_congestion = 0;  // max over directed edges of dir_edge_load

  // JSON export of the transcript (summary plus logs that were recorded).
  std::string to_json(bool include_message_logs = false) const;
};

}  // namespace congesim::net
