#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "vilenkin/harness.hpp"
#include "vilenkin/norms.hpp"
#include "vilenkin/operators.hpp"

using namespace vilenkin;

namespace {

std::string render(const RunResult& r, Format f) {
  std::ostringstream out;
  emit(r, f, out);
  return out.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"' && quoted && i + 1 < line.size() && line[i + 1] == '"') cells.back() += line[++i];
    else if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) cells.emplace_back();
    else cells.back() += c;
  }
  return cells;
}

ExperimentConfig small(std::string experiment) {
  ExperimentConfig cfg;
  cfg.experiment = std::move(experiment);
  cfg.bases = {"2x4"};
  cfg.samples = 3;
  cfg.polynomials = 2;
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("cone sum against a brute-force enumeration") {
  const Base b = parse_base("2x4");
  const Atom a = random_atom(b, 4, 1, 0.75, 5);
  const StrongSum s = strong_sum(a.values, 0.75, 1.0, WeightMode::cone_power);
  const ConeParams cone{1.0};
  double lhs = 0.0;
  for (Index k = 1; k <= 16; ++k)
    for (Index l = 1; l <= 16; ++l)
      if (cone.contains(k, l))
        lhs += std::pow(lp_quasinorm(partial_sum(a.values, k, l), 0.75).value, 0.75) / std::pow(static_cast<double>(k * l), 1.25);
  CHECK(s.lhs == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(s.rhs == doctest::Approx(std::pow(hardy_square_norm(a.values, 0.75).value, 0.75)).epsilon(1e-12));
  CHECK(std::isfinite(s.ratio));

  const StrongSum zero = strong_sum(GridFunction2D(b, 4), 0.75, 1.0, WeightMode::cone_power);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.ratio == 0.0);

  // [p] = 0 for p < 1, so the log weight is inert.
  CHECK(strong_sum(a.values, 0.75, 1.0, WeightMode::log_weighted).lhs == doctest::Approx(s.lhs).epsilon(1e-14));
  const StrongSum diag = strong_sum(a.values, 0.75, 1.0, WeightMode::diagonal);
  double dl = 0.0;
  for (Index k = 1; k <= 16; ++k) dl += std::pow(lp_quasinorm(partial_sum(a.values, k, k), 0.75).value, 0.75) / std::pow(double(k), 2.5);
  CHECK(diag.lhs == doctest::Approx(dl).epsilon(1e-12));
  const StrongSum series = strong_sum(a.values, 1.0, 1.0, WeightMode::diagonal_series);
  double sl = 0.0;
  for (Index k = 1; k <= 16; ++k)
    sl += lp_quasinorm(partial_sum(a.values, k, k), 1.0).value / (double(k) * std::pow(std::log(k + 1.0), 2));
  CHECK(series.lhs == doctest::Approx(sl).epsilon(1e-12));
}

TEST_CASE("strong summability run") {
  ExperimentConfig cfg = small("strong-sum");
  cfg.depths = {3, 4};
  const RunResult r = run_experiment(cfg);
  CHECK(r.rows.size() == 6);
  CHECK(r.summary.size() == 2);
  for (const auto& row : r.rows) CHECK(std::isfinite(std::get<double>(row[r.column("ratio")])));
  cfg.family = Family::thm3b;
  CHECK(run_experiment(cfg).rows.size() == 8);
  cfg.p = 1.0;
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("runs are deterministic and formats agree") {
  for (const char* experiment : {"strong-sum", "convergence", "lemma1", "kernel"}) {
    ExperimentConfig cfg = small(experiment);
    if (std::string(experiment) == "lemma1") cfg.bases = {"2,3x2"};
    const RunResult a = run_experiment(cfg);
    cfg.threads = 1;
    const RunResult b = run_experiment(cfg);
    CHECK(render(a, Format::csv) == render(b, Format::csv));
    CHECK(render(a, Format::json) == render(b, Format::json));

    const auto json = nlohmann::json::parse(render(a, Format::json));
    REQUIRE(json.size() == a.rows.size() + 1);
    std::istringstream csv(render(a, Format::csv));
    std::string line;
    std::getline(csv, line);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      std::getline(csv, line);
      const auto cells = split_csv(line);
      REQUIRE(cells.size() == a.columns.size());
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::string& cell = cells[c];
        const auto& field = json[i][a.columns[c]];
        if (field.is_number_float()) CHECK(std::stod(cell) == field.get<double>());
        else if (field.is_number_integer()) CHECK(std::stoll(cell) == field.get<long long>());
        else CHECK(cell == field.get<std::string>());
      }
    }
    CHECK(json.back()["kind"] == "summary");
  }
}

TEST_CASE("emission edge cases") {
  CHECK(split_csv("a,\"2,3x2\",\"q\"\"\"") == std::vector<std::string>{"a", "2,3x2", "q\""});
  RunResult empty;
  empty.experiment = "nothing";
  empty.columns = {"experiment", "value"};
  CHECK(render(empty, Format::csv) == "experiment,value\n# summary: pass=yes\n");
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  const auto missing = std::filesystem::path("/nonexistent-dir") / "out.csv";
  CHECK_THROWS_AS(emit(empty, Format::csv, missing), Error);
}

TEST_CASE("sharpness of theorem 1(b)") {
  ExperimentConfig cfg = small("sharpness");
  cfg.bases = {"2x6"};
  cfg.family = Family::thm1b;
  cfg.p = 0.5;
  cfg.phi = "sumpow:1";
  const RunResult r = run_experiment(cfg);
  CHECK(r.pass());
  const auto col = r.column("ratio");
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    CHECK(std::get<double>(r.rows[i][col]) > std::get<double>(r.rows[i - 1][col]));

  cfg.phi = "sumpow:2";
  const RunResult flat = run_experiment(cfg);
  bool flagged = false;
  for (const auto& [k, v] : flat.summary) flagged = flagged || (k.starts_with("hypothesis") && std::get<std::string>(v) == "not met");
  CHECK(flagged);
  CHECK(flat.pass());

  cfg.bases = {"2x3"};
  CHECK_THROWS_AS(run_experiment(cfg), Error);
  cfg.family = Family::random_atom;
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("sharpness of theorem 4(b)") {
  ExperimentConfig cfg = small("sharpness");
  cfg.bases = {"2x12"};
  cfg.family = Family::thm4b;
  cfg.p = 0.5;
  cfg.phi = "pow:1";
  const RunResult r = run_experiment(cfg);
  CHECK(r.rows.size() == 3);
  CHECK(r.pass());
  // The functional dominates a fixed multiple of Phi^{3/4}.
  for (const auto& row : r.rows) CHECK(std::get<double>(row[r.column("functional_over_phi_34")]) > 0.05);
}

TEST_CASE("convergence runs") {
  ExperimentConfig cfg = small("convergence");
  cfg.depths = {3};
  const RunResult r = run_experiment(cfg);
  for (const auto& row : r.rows)
    if (std::get<std::string>(row[r.column("part")]) == "polynomial") CHECK(std::get<double>(row[r.column("value")]) == 0.0);
  cfg.family = Family::thm3b;
  cfg.p = 0.5;
  cfg.bases = {"2x6"};
  cfg.depths = {};
  CHECK(run_experiment(cfg).pass());
  cfg.family = Family::thm4b;
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("lemma 1 runs") {
  ExperimentConfig cfg = small("lemma1");
  cfg.bases = {"2,3x2", "2x5"};
  const RunResult r = run_experiment(cfg);
  bool first = false, second = false;
  for (const auto& row : r.rows) {
    const auto& base = std::get<std::string>(row[r.column("base")]);
    first = first || base == "2,3x2";
    second = second || base == "2x5";
  }
  CHECK(first);
  CHECK(second);
  cfg.eps = {};
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("unknown experiments are rejected") {
  CHECK_THROWS_AS(run_experiment(small("plot")), Error);
  CHECK_THROWS_AS(parse_weight_mode("square"), Error);
}
