// vilenkin <strong-sum|sharpness|convergence|lemma1|transform|kernel> [options]
//
// Exit status: 0 when every criterion of the run passes, 1 when one fails,
// 2 on usage or input errors.

#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "vilenkin/grid_io.hpp"
#include "vilenkin/harness.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/transform.hpp"

namespace {

using namespace vilenkin;

template <typename T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.empty()) continue;
    std::stringstream cell(item);
    T v{};
    require(static_cast<bool>(cell >> v) && cell.eof(), ErrorCode::parse_error, "bad list item '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Lists are given comma separated; base specs already contain commas, so
// several bases are separated by '/'.
std::string commas_to_semicolons(std::string s) {
  for (char& c : s)
    if (c == ',') c = ';';
  return s;
}

int run_transform(const std::string& in_path, const std::string& out_path, const std::string& direction,
                  const std::string& mode_text) {
  require(!in_path.empty(), ErrorCode::invalid_argument, "transform needs --in");
  require(!out_path.empty() && out_path != "-", ErrorCode::invalid_argument, "transform needs --out");
  const GridFile file = load_grid(in_path);
  const Mode mode = mode_text == "naive" ? Mode::naive : Mode::fast;
  const bool fwd = direction == "forward";
  require(fwd || direction == "inverse", ErrorCode::invalid_argument, "direction is forward or inverse");
  const auto& h = file.header;
  if (const auto* v = std::get_if<Eigen::VectorXcd>(&file.values)) {
    const Eigen::VectorXcd r = fwd ? forward(GridFunction1D(h.base, h.depth, *v), mode).values()
                                   : inverse(Spectrum1D(h.base, h.depth, *v), mode).values();
    save_grid(out_path, h, GridPayload(std::in_place_type<Eigen::VectorXcd>, r));
  } else {
    const auto& m = std::get<Eigen::MatrixXcd>(file.values);
    const Eigen::MatrixXcd r = fwd ? forward(GridFunction2D(h.base, h.depth, m), mode).values()
                                   : inverse(Spectrum2D(h.base, h.depth, m), mode).values();
    save_grid(out_path, h, GridPayload(std::in_place_type<Eigen::MatrixXcd>, r));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vilenkin-Fourier experiments"};
  app.set_config("--config", "", "key=value configuration file");

  std::string command;
  std::string bases = "2x5", depths, eps = "0.25,0.5,1", cells, weight_mode = "cone-power", family = "random-atom";
  std::string out_path = "-", format = "csv", in_path, direction = "forward", mode = "fast", method = "closed";
  ExperimentConfig cfg;
  long long n = -1;

  app.add_option("command", command, "strong-sum | sharpness | convergence | lemma1 | transform | kernel")
      ->required()
      ->check(CLI::IsMember({"strong-sum", "sharpness", "convergence", "lemma1", "transform", "kernel"}));
  app.add_option("--base", bases, "generator spec such as 2x5 or 2,3,4; several separated by '/'");
  app.add_option("--depth", depths, "truncation depth, or a comma list of depths");
  app.add_option("--p", cfg.p, "exponent p");
  app.add_option("--alpha", cfg.alpha, "cone parameter");
  app.add_option("--eps", eps, "comma list of epsilons (lemma1)");
  app.add_option("--cell-depth", cells, "comma list of cell depths (lemma1)");
  app.add_option("--samples", cfg.samples, "number of random atoms");
  app.add_option("--polynomials", cfg.polynomials, "number of random polynomials (convergence)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--weight-mode", weight_mode, "cone-power | log-weighted | diagonal | diagonal-series");
  app.add_option("--family", family, "thm1b | thm3b | thm4b | random-atom");
  app.add_option("--phi", cfg.phi, "log | pow:theta | sumpow:theta");
  app.add_option("--kmax", cfg.k_max, "largest family index (0: all representable)");
  app.add_option("--growth-floor", cfg.growth_floor, "per-step growth required of divergent functionals");
  app.add_option("--drift", cfg.drift, "allowed growth of bounded quantities per depth step");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  app.add_option("--out", out_path, "output file, '-' for stdout");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--in", in_path, "input grid (transform)");
  app.add_option("--direction", direction, "forward | inverse (transform)");
  app.add_option("--mode", mode, "fast | naive (transform)");
  app.add_option("--n", n, "kernel index; writes D_n as a grid (kernel)");
  app.add_option("--method", method, "closed | direct (kernel)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (command == "transform") return run_transform(in_path, out_path, direction, mode);

    cfg.experiment = command;
    cfg.bases.clear();
    std::stringstream list(bases);
    for (std::string b; std::getline(list, b, '/');)
      if (!b.empty()) cfg.bases.push_back(b);
    cfg.depths = split_list<int>(commas_to_semicolons(depths));
    cfg.eps = split_list<double>(commas_to_semicolons(eps));
    cfg.cell_depths = split_list<int>(commas_to_semicolons(cells));
    cfg.weight_mode = parse_weight_mode(weight_mode);
    cfg.family = parse_family(family);

    if (command == "kernel" && n >= 0) {
      require(out_path != "-", ErrorCode::invalid_argument, "kernel --n needs --out");
      const Base base = parse_base(cfg.bases.front(), cfg.depths.empty() ? 0 : cfg.depths.front());
      const GridFunction1D d =
          dirichlet(base, base.depth(), n, method == "direct" ? KernelMethod::direct : KernelMethod::closed);
      save_grid(out_path, d);
      return 0;
    }

    const RunResult result = run_experiment(cfg);
    const Format fmt = format == "json" ? Format::json : Format::csv;
    if (out_path == "-") emit(result, fmt, std::cout);
    else emit(result, fmt, std::filesystem::path(out_path));
    for (const auto& c : result.criteria)
      if (!c.pass) std::cerr << "criterion failed: " << c.name << " (" << c.detail << ")\n";
    return result.pass() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
