#include "vilenkin/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vilenkin {

using Json = nlohmann::ordered_json;

std::string to_manifest(const AtomicDecomposition& d) {
  Json j;
  j["format"] = "vilenkin-decomposition v1";
  j["base"] = d.base().spec();
  j["depth"] = d.depth();
  j["p"] = d.p();
  if (!d.phi_spec.empty()) j["phi"] = d.phi_spec;
  if (d.cone_alpha != 0.0) j["alpha"] = d.cone_alpha;
  j["terms"] = Json::array();
  for (const auto& t : d.terms()) {
    Json term;
    term["lambda"] = t.lambda;
    term["family"] = std::string(to_string(t.origin.family));
    if (t.origin.family == Family::random_atom) {
      term["seed"] = t.origin.seed;
      term["support_depth"] = t.origin.support_depth;
    } else {
      term["alpha_k"] = t.origin.alpha_k;
      term["top"] = t.origin.top;
    }
    j["terms"].push_back(std::move(term));
  }
  return j.dump(2) + "\n";
}

AtomicDecomposition from_manifest(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    require(j.value("format", "") == "vilenkin-decomposition v1", ErrorCode::parse_error, "not a decomposition manifest");
    const int depth = j.at("depth").get<int>();
    const Base base = parse_base(j.at("base").get<std::string>());
    AtomicDecomposition d(base, depth, j.at("p").get<double>());
    d.phi_spec = j.value("phi", "");
    d.cone_alpha = j.value("alpha", 0.0);
    for (const Json& term : j.at("terms")) {
      AtomOrigin o;
      o.family = parse_family(term.at("family").get<std::string>());
      if (o.family == Family::random_atom) {
        o.seed = term.at("seed").get<std::uint64_t>();
        o.support_depth = term.at("support_depth").get<int>();
      } else {
        o.alpha_k = term.at("alpha_k").get<int>();
        o.top = term.at("top").get<int>();
        o.support_depth = o.alpha_k;
      }
      d.add(term.at("lambda").get<double>(), regenerate_atom(base, depth, d.p(), o), o);
    }
    return d;
  } catch (const Json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed manifest: ") + e.what());
  }
}

void save_manifest(const std::filesystem::path& path, const AtomicDecomposition& d) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
  out << to_manifest(d);
  require(static_cast<bool>(out), ErrorCode::io_failure, "write failed for " + path.string());
}

AtomicDecomposition load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io_failure, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_manifest(text.str());
}

}  // namespace vilenkin
