#include "confgate/attack/trace.hpp"

#include <istream>

#include "json.hpp"

namespace confgate::attack {

std::string trace_jsonl(const AttackTrace& trace, std::size_t sample_index) {
  std::string out;
  for (const Milestone& m : trace.milestones) {
    nlohmann::json line{{"sample", sample_index},
                        {"event", "milestone"},
                        {"queries", m.queries},
                        {"distance", m.distance}};
    out += line.dump();
    out += '\n';
  }
  nlohmann::json line{{"sample", sample_index},
                      {"event", "final"},
                      {"queries", trace.queries_used},
                      {"distance", trace.final_distance}};
  if (trace.success.has_value()) line["success"] = *trace.success;
  out += line.dump();
  out += '\n';
  return out;
}

std::vector<TraceFinal> read_trace_finals(std::istream& in) {
  std::vector<TraceFinal> finals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (j.value("event", "") != "final") continue;
    TraceFinal f;
    f.sample = j.at("sample").get<std::size_t>();
    f.queries = j.at("queries").get<std::size_t>();
    f.distance = j.at("distance").get<double>();
    if (j.contains("success")) {
      f.has_success = true;
      f.success = j.at("success").get<bool>();
    }
    finals.push_back(f);
  }
  return finals;
}

}  // namespace confgate::attack
