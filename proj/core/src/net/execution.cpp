#include "congesim/net/execution.hpp"

#include "json.hpp"

namespace congesim::net {

namespace {
nlohmann::json slot_json(const Slot& s) {
  if (!s) return nullptr;
  return nlohmann::json{{"value", s->value}, {"width", s->width}};
}
}  // namespace

std::string Execution::to_json(bool include_message_logs) const {
  nlohmann::json j;
  j["rounds"] = rounds;
  j["bandwidth"] = bandwidth;
  j["seed"] = seed;
  j["total_corrupted_messages"] = total_corrupted_messages;
  j["max_edge_congestion"] = max_edge_congestion;

  nlohmann::json stats = nlohmann::json::array();
  for (const auto& s : round_stats)
    stats.push_back({{"messages", s.messages},
                     {"controlled_edges", s.controlled_edges},
                     {"corrupted_messages", s.corrupted_messages}});
  j["round_stats"] = stats;

  nlohmann::json corr = nlohmann::json::array();
  for (const auto& c : corruptions)
    corr.push_back({{"round", c.round},
                    {"dir_edge", c.dir_edge},
                    {"sent", slot_json(c.sent)},
                    {"delivered", slot_json(c.delivered)}});
  j["corruptions"] = corr;

  nlohmann::json tap_arr = nlohmann::json::array();
  for (const auto& t : taps)
    tap_arr.push_back({{"round", t.round},
                       {"edge", t.edge},
                       {"uv", slot_json(t.uv)},
                       {"vu", slot_json(t.vu)}});
  j["taps"] = tap_arr;

  j["controlled"] = controlled;
  j["outputs"] = outputs;
  j["dir_edge_load"] = dir_edge_load;

  if (include_message_logs) {
    auto log_json = [](const std::vector<std::vector<Slot>>& log) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& round : log) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& s : round) r.push_back(slot_json(s));
        arr.push_back(r);
      }
      return arr;
    };
    j["sent_log"] = log_json(sent_log);
    j["delivered_log"] = log_json(delivered_log);
  }
  return j.dump(2);
}

}  // namespace congesim::net
