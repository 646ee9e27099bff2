#include "confgate/harness/grid.hpp"

#include <atomic>
#include <bit>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "confgate/attack/hsja.hpp"
#include "confgate/attack/surfree.hpp"
#include "confgate/attack/trace.hpp"
#include "confgate/core/rng.hpp"
#include "confgate/defense/gate.hpp"
#include "confgate/eval/pareto.hpp"

namespace confgate::harness {

using core::RngStream;
using eval::ExperimentPoint;

namespace {

constexpr std::uint64_t kModelLane = 0x30DE1;
constexpr std::uint64_t kSelectLane = 0x5E1EC7;
constexpr std::uint64_t kCellSalt = 0xCE11;

// Shortest exact decimal rendering, shared with the JSON writers so the
// same double always prints the same bytes.
std::string fmt_double(double v) { return nlohmann::json(v).dump(); }

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string cell_trace_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "cell_%04zu.jsonl", index);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t master_seed, attack::AttackKind attack,
                        defense::DefenseKind defense, double nu, double tau) {
  std::uint64_t h = core::mix_seed(master_seed, kCellSalt);
  h = core::mix_seed(h, static_cast<std::uint64_t>(attack));
  h = core::mix_seed(h, static_cast<std::uint64_t>(defense));
  h = core::mix_seed(h, std::bit_cast<std::uint64_t>(nu));
  h = core::mix_seed(h, std::bit_cast<std::uint64_t>(tau));
  return h;
}

std::string results_csv(const std::vector<ExperimentPoint>& points) {
  std::string out = "attack,defense,nu,tau,ca,ra,asr,n,mean_queries,seed\n";
  for (const ExperimentPoint& p : points) {
    out += to_string(p.attack);
    out += ',';
    out += to_string(p.defense.kind);
    out += ',';
    out += fmt_double(p.defense.nu);
    out += ',';
    out += fmt_double(p.tau);
    out += ',';
    out += fmt_double(p.ca);
    out += ',';
    out += fmt_double(p.ra);
    out += ',';
    out += fmt_double(p.asr);
    out += ',';
    out += std::to_string(p.n);
    out += ',';
    out += fmt_double(p.mean_queries);
    out += ',';
    out += std::to_string(p.seed);
    out += '\n';
  }
  return out;
}

std::vector<ExperimentPoint> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("results CSV is empty");
  if (line != "attack,defense,nu,tau,ca,ra,asr,n,mean_queries,seed")
    throw std::runtime_error("unexpected results CSV header: " + line);

  std::vector<ExperimentPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10)
      throw std::runtime_error("results CSV line " + std::to_string(line_no) +
                               ": expected 10 fields");
    ExperimentPoint p;
    p.attack = attack::attack_from_string(fields[0]);
    p.defense.kind = defense::defense_from_string(fields[1]);
    p.defense.nu = std::stod(fields[2]);
    p.tau = std::stod(fields[3]);
    p.ca = std::stod(fields[4]);
    p.ra = std::stod(fields[5]);
    p.asr = std::stod(fields[6]);
    p.n = std::stoull(fields[7]);
    p.mean_queries = std::stod(fields[8]);
    p.seed = std::stoull(fields[9]);
    p.validate();
    points.push_back(p);
  }
  return points;
}

std::vector<ExperimentPoint> read_results_csv_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open results CSV: " + path.string());
  return read_results_csv(in);
}

std::string frontier_json(const std::vector<ExperimentPoint>& points) {
  nlohmann::json doc;
  doc["points"] = nlohmann::json::array();
  for (const ExperimentPoint& p : points)
    doc["points"].push_back({{"ca", p.ca},
                             {"ra", p.ra},
                             {"nu", p.defense.nu},
                             {"tau", p.tau},
                             {"defense", to_string(p.defense.kind)},
                             {"attack", to_string(p.attack)}});
  doc["frontier"] = eval::pareto_frontier(points);
  return doc.dump(2) + "\n";
}

std::pair<model::MlpClassifier, model::TemperatureScaler> train_model(
    const ExperimentConfig& cfg, const DataSplits& splits) {
  std::vector<std::size_t> sizes;
  sizes.push_back(splits.train.xs.front().size());
  for (std::size_t h : cfg.model.hidden) sizes.push_back(h);
  sizes.push_back(static_cast<std::size_t>(splits.train.n_classes));
  RngStream model_rng(cfg.master_seed, kModelLane);
  auto net = model::MlpClassifier::random_init(sizes, model_rng);
  model::TrainConfig tc{cfg.model.epochs, cfg.model.lr, cfg.model.batch};
  model::train_sgd(net, splits.train, tc, model_rng);
  auto scaler = model::calibrate_temperature(net, splits.val);
  return {std::move(net), scaler};
}

PreparedExperiment prepare_experiment(const ExperimentConfig& cfg) {
  PreparedExperiment prep;
  prep.splits = load_or_generate(cfg);
  if (prep.splits.train.size() == 0 || prep.splits.val.size() == 0 ||
      prep.splits.test.size() == 0)
    throw std::invalid_argument("dataset splits must all be nonempty");

  if (!cfg.model.checkpoint.empty()) {
    auto [net, temperature] = model::load_checkpoint(cfg.model.checkpoint);
    prep.net = std::move(net);
    prep.scaler.temperature = temperature;
  } else {
    std::tie(prep.net, prep.scaler) = train_model(cfg, prep.splits);
  }

  // Undefended accuracy through the same gate code path every cell uses, so
  // the tau = 0 column can match it bit for bit.
  defense::GatedClassifier undefended(
      prep.net, prep.scaler, {defense::DefenseKind::kNone, 0.0}, {0.0},
      core::ResponseMode::kDecision);
  prep.undefended_ca = eval::compute_ca(undefended, prep.splits.test,
                                        RngStream(cfg.master_seed, kCellSalt));

  prep.epsilon = cfg.epsilon_auto ? default_epsilon(prep.splits.train)
                                  : cfg.attack.epsilon;

  std::vector<std::size_t> correct;
  for (std::size_t i = 0; i < prep.splits.test.size(); ++i) {
    core::ProbVector probs =
        prep.scaler.apply(prep.net.forward(prep.splits.test.xs[i]));
    if (probs.argmax() == prep.splits.test.ys[i]) correct.push_back(i);
  }
  if (correct.size() < cfg.n_attack)
    throw std::invalid_argument(
        "test split has only " + std::to_string(correct.size()) +
        " correctly classified samples, need " + std::to_string(cfg.n_attack));
  RngStream select_rng(cfg.master_seed, kSelectLane);
  for (std::size_t i = 0; i < cfg.n_attack; ++i) {
    std::size_t j =
        i + select_rng.uniform_int(correct.size() - i);
    std::swap(correct[i], correct[j]);
    prep.attack_indices.push_back(correct[i]);
  }
  return prep;
}

ExperimentPoint run_cell(const ExperimentConfig& cfg,
                         const PreparedExperiment& prep, double nu, double tau,
                         std::string* traces_out) {
  defense::DefenseParam dp{cfg.defense_kind, nu};
  defense::GatedClassifier clf(prep.net, prep.scaler, dp, {tau},
                               core::ResponseMode::kDecision);

  std::uint64_t seed =
      cell_seed(cfg.master_seed, cfg.attack.kind, cfg.defense_kind, nu, tau);
  RngStream base(seed);

  ExperimentPoint point;
  point.attack = cfg.attack.kind;
  point.defense = dp;
  point.tau = tau;
  point.seed = seed;
  point.n = cfg.n_attack;
  point.ca = eval::compute_ca(clf, prep.splits.test, base.fork(0));

  attack::AttackConfig acfg = cfg.attack;
  acfg.epsilon = prep.epsilon;
  acfg.validate();

  std::vector<bool> outcomes;
  std::string traces;
  double total_queries = 0.0;
  for (std::size_t i = 0; i < cfg.n_attack; ++i) {
    std::size_t sample = prep.attack_indices[i];
    const core::InputVector& x0 = prep.splits.test.xs[sample];
    core::Label y = prep.splits.test.ys[sample];

    core::QueryLedger ledger(acfg.budget);
    RngStream attack_rng = base.fork(2 + 2 * i);
    attack::AttackTrace trace;
    try {
      trace = acfg.kind == attack::AttackKind::kHsjaLike
                  ? attack::attack_hsja_like(clf, x0, acfg, ledger, attack_rng)
                  : attack::attack_surfree_like(clf, x0, acfg, ledger,
                                                attack_rng);
    } catch (const attack::InitFailure&) {
      // No starting point within the cap: the attack forfeits this sample.
      trace.final_candidate = x0;
      trace.final_distance = 0.0;
      trace.queries_used = ledger.used();
    }

    RngStream eval_rng = base.fork(3 + 2 * i);
    bool success =
        eval::is_successful(trace.final_candidate, x0, y, clf, acfg, eval_rng);
    trace.success = success;
    outcomes.push_back(success);
    total_queries += static_cast<double>(trace.queries_used);
    if (traces_out) traces += attack::trace_jsonl(trace, i);
  }

  eval::AsrResult ar = eval::compute_asr(outcomes);
  point.asr = ar.asr;
  point.ra = ar.ra;
  point.mean_queries = total_queries / static_cast<double>(cfg.n_attack);
  point.validate();
  if (traces_out) *traces_out = std::move(traces);
  return point;
}

GridResult run_grid(const ExperimentConfig& cfg,
                    const std::filesystem::path& out_dir) {
  cfg.validate();
  std::string started = utc_now();
  PreparedExperiment prep = prepare_experiment(cfg);

  struct Cell {
    double nu;
    double tau;
  };
  std::vector<Cell> cells;
  for (double nu : cfg.nus)
    for (double tau : cfg.taus) cells.push_back({nu, tau});

  std::vector<std::optional<ExperimentPoint>> outcomes(cells.size());
  std::vector<std::string> traces(cells.size());
  std::vector<std::string> errors(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        outcomes[i] =
            run_cell(cfg, prep, cells[i].nu, cells[i].tau, &traces[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::size_t n_workers = std::min(cfg.workers, cells.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Serialize in cell order so bytes never depend on scheduling.
  std::filesystem::create_directories(out_dir / "traces");
  GridResult result;
  result.undefended_ca = prep.undefended_ca;
  result.epsilon = prep.epsilon;
  nlohmann::json manifest_cells = nlohmann::json::array();
  std::size_t csv_row = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    nlohmann::json entry{
        {"index", i},
        {"nu", cells[i].nu},
        {"tau", cells[i].tau},
        {"seed", cell_seed(cfg.master_seed, cfg.attack.kind, cfg.defense_kind,
                           cells[i].nu, cells[i].tau)}};
    if (outcomes[i]) {
      std::string name = cell_trace_name(i);
      write_text(out_dir / "traces" / name, traces[i]);
      entry["status"] = "ok";
      entry["traces"] = "traces/" + name;
      entry["csv_row"] = csv_row++;
      result.points.push_back(*outcomes[i]);
    } else {
      entry["status"] = "failed";
      entry["error"] = errors[i];
      result.failures.push_back("cell " + std::to_string(i) + ": " +
                                errors[i]);
    }
    manifest_cells.push_back(std::move(entry));
  }

  result.csv_path = out_dir / "results.csv";
  write_text(result.csv_path, results_csv(result.points));
  result.frontier_path = out_dir / "frontier.json";
  write_text(result.frontier_path, frontier_json(result.points));

  char hash_hex[24];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  nlohmann::json manifest{
      {"tool_version", kToolVersion},
      {"config_hash", hash_hex},
      {"master_seed", cfg.master_seed},
      {"attack", to_string(cfg.attack.kind)},
      {"defense", to_string(cfg.defense_kind)},
      {"epsilon", prep.epsilon},
      {"undefended_ca", prep.undefended_ca},
      {"n_attack", cfg.n_attack},
      {"cells", std::move(manifest_cells)},
      {"timestamps", {{"started", started}, {"finished", utc_now()}}}};
  result.manifest_path = out_dir / "manifest.json";
  write_text(result.manifest_path, manifest.dump(2) + "\n");
  return result;
}

}  // namespace confgate::harness
