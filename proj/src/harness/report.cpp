#include "confgate/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "confgate/eval/pareto.hpp"

namespace confgate::harness {

namespace {

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string cell_text(const eval::ExperimentPoint& p, bool marked) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f/%.2f", p.ca, p.ra);
  return marked ? "*" + std::string(buf) + "*" : std::string(buf);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string format_ca_ra(double ca, double ra) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "CA %.2f / RA %.2f", ca, ra);
  return buf;
}

bool escapes_baseline(const eval::ExperimentPoint& p,
                      const std::vector<eval::ExperimentPoint>& baseline) {
  return std::none_of(
      baseline.begin(), baseline.end(),
      [&](const eval::ExperimentPoint& b) { return eval::dominates(b, p); });
}

RenderedTable render_table(const std::vector<eval::ExperimentPoint>& points) {
  RenderedTable out;

  using BlockKey = std::pair<std::string, std::string>;
  std::map<BlockKey, std::map<std::pair<double, double>, eval::ExperimentPoint>>
      blocks;
  for (const eval::ExperimentPoint& p : points) {
    BlockKey key{to_string(p.attack), to_string(p.defense.kind)};
    auto cell_key = std::make_pair(p.defense.nu, p.tau);
    auto [it, inserted] = blocks[key].emplace(cell_key, p);
    if (!inserted) {
      it->second = p;
      out.warnings.push_back("duplicate cell attack=" + key.first +
                             " defense=" + key.second +
                             " nu=" + short_num(p.defense.nu) +
                             " tau=" + short_num(p.tau) + ", keeping the last");
    }
  }

  for (const auto& [key, cells] : blocks) {
    std::vector<double> nus;
    std::vector<double> taus;
    for (const auto& [ck, p] : cells) {
      nus.push_back(ck.first);
      taus.push_back(ck.second);
    }
    std::sort(nus.begin(), nus.end());
    nus.erase(std::unique(nus.begin(), nus.end()), nus.end());
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

    std::vector<eval::ExperimentPoint> vanilla;
    bool has_always_on = false;
    for (const auto& [ck, p] : cells) {
      if (ck.second == 0.0 || ck.second == 1.0) vanilla.push_back(p);
      if (ck.second == 1.0) has_always_on = true;
    }
    bool mark = has_always_on;
    if (!mark)
      out.warnings.push_back("block attack=" + key.first + " defense=" +
                             key.second +
                             ": no tau=1 column, domination marking disabled");

    // Assemble rows first, then pad every column to its widest entry.
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"nu\\tau"};
    for (double tau : taus) header.push_back(short_num(tau));
    rows.push_back(std::move(header));
    for (double nu : nus) {
      std::vector<std::string> row{short_num(nu)};
      for (double tau : taus) {
        auto it = cells.find({nu, tau});
        if (it == cells.end()) {
          row.push_back("-");
        } else {
          bool marked = mark && it->second.tau != 0.0 &&
                        it->second.tau != 1.0 &&
                        escapes_baseline(it->second, vanilla);
          row.push_back(cell_text(it->second, marked));
        }
      }
      rows.push_back(std::move(row));
    }

    std::vector<std::size_t> widths(rows.front().size(), 0);
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        widths[c] = std::max(widths[c], row[c].size());

    out.text += "attack=" + key.first + " defense=" + key.second + "\n";
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) line += "  ";
        line += pad(row[c], widths[c]);
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out.text += line + "\n";
    }
    out.text += "\n";
  }
  return out;
}

}  // namespace confgate::harness
