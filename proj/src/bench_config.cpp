#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ipsim/bench.hpp"
#include "json.hpp"

namespace ipsim::bench {

namespace {

using nlohmann::json;

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw Error("config: " + where + " must be a number");
  return j.get<double>();
}

long long as_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw Error("config: " + where + " must be an integer");
  }
  return j.get<long long>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw Error("config: " + where + " must be a string");
  return j.get<std::string>();
}

void require_known_keys(const json& j, const std::vector<std::string>& known,
                        const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error("config: unknown field '" + where + key + "'");
    }
  }
}

void parse_model(const json& j, ModelSpec& m) {
  if (!j.is_object()) throw Error("config: model must be an object");
  require_known_keys(j,
                     {"kind", "N", "cutoff", "a", "g", "m", "theta", "mu",
                      "lambda", "omegas", "h_free", "terms", "frame"},
                     "model.");
  if (j.contains("kind")) m.kind = as_string(j["kind"], "model.kind");
  if (m.kind != "schwinger" && m.kind != "neutrino" && m.kind != "penalty" &&
      m.kind != "random") {
    throw Error("config: unknown model.kind '" + m.kind + "'");
  }
  if (j.contains("N")) {
    const long long n = as_integer(j["N"], "model.N");
    m.schwinger.sites = static_cast<int>(n);
    m.neutrino.count = static_cast<int>(n);
    m.penalty_qubits = static_cast<int>(n);
    m.random_qubits = static_cast<int>(n);
  }
  if (j.contains("cutoff")) {
    m.schwinger.cutoff = static_cast<int>(as_integer(j["cutoff"], "model.cutoff"));
  }
  if (j.contains("a")) m.schwinger.a = as_number(j["a"], "model.a");
  if (j.contains("g")) m.schwinger.g = as_number(j["g"], "model.g");
  if (j.contains("m")) m.schwinger.m = as_number(j["m"], "model.m");
  if (j.contains("theta")) m.neutrino.theta = as_number(j["theta"], "model.theta");
  if (j.contains("mu")) m.neutrino.mu = as_number(j["mu"], "model.mu");
  if (j.contains("lambda")) {
    const double v = as_number(j["lambda"], "model.lambda");
    m.neutrino.lambda_e = v;
    m.lambda_pen = v;
  }
  if (j.contains("omegas")) {
    if (!j["omegas"].is_array()) throw Error("config: model.omegas must be an array");
    m.neutrino.omegas.clear();
    for (const auto& w : j["omegas"]) {
      m.neutrino.omegas.push_back(as_number(w, "model.omegas[]"));
    }
  }
  if (j.contains("h_free")) {
    m.penalty_h_free = as_string(j["h_free"], "model.h_free");
  }
  if (j.contains("terms")) {
    m.random_terms = static_cast<int>(as_integer(j["terms"], "model.terms"));
  }
  if (j.contains("frame")) {
    if (!j["frame"].is_array()) throw Error("config: model.frame must be an array");
    m.frame.clear();
    for (const auto& f : j["frame"]) {
      m.frame.push_back(as_string(f, "model.frame[]"));
    }
  }
}

void parse_protocol(const json& j, ProtocolSpec& p) {
  if (!j.is_object()) throw Error("config: protocol must be an object");
  require_known_keys(j, {"kind", "order", "r", "mode"}, "protocol.");
  if (j.contains("kind")) p.kind = as_string(j["kind"], "protocol.kind");
  if (p.kind != "exact" && p.kind != "trotter" && p.kind != "qdrift" &&
      p.kind != "hybrid_tq" && p.kind != "hybrid_qq" && p.kind != "hybrid_tqq") {
    throw Error("config: unknown protocol.kind '" + p.kind + "'");
  }
  if (j.contains("order")) {
    p.order = static_cast<int>(as_integer(j["order"], "protocol.order"));
  }
  if (j.contains("r")) p.r = as_integer(j["r"], "protocol.r");
  if (j.contains("mode")) {
    p.mode = as_string(j["mode"], "protocol.mode");
    if (p.mode != "exact-channel" && p.mode != "sampled") {
      throw Error("config: protocol.mode must be exact-channel or sampled");
    }
  }
}

void parse_sweep(const json& j, SweepSpec& s) {
  if (!j.is_object()) throw Error("config: sweep must be an object");
  require_known_keys(j, {"param", "values"}, "sweep.");
  if (!j.contains("param")) throw Error("config: sweep.param is required");
  s.param = as_string(j["param"], "sweep.param");
  static const std::vector<std::string> kParams = {
      "t",     "eps",   "r", "order", "trajectories", "seed",   "protocol",
      "N",     "cutoff", "a", "g",    "m",            "theta",  "mu",
      "lambda", "lambda_pen"};
  if (std::find(kParams.begin(), kParams.end(), s.param) == kParams.end()) {
    throw Error("config: unknown sweep.param '" + s.param + "'");
  }
  if (!j.contains("values") || !j["values"].is_array() || j["values"].empty()) {
    throw Error("config: sweep.values must be a nonempty array");
  }
  for (const auto& v : j["values"]) {
    SweepValue sv;
    if (v.is_number()) {
      sv.number = v.get<double>();
      sv.is_number = true;
      std::ostringstream os;
      os << sv.number;
      sv.text = os.str();
    } else if (v.is_string()) {
      sv.text = v.get<std::string>();
    } else {
      throw Error("config: sweep.values entries must be numbers or strings");
    }
    s.values.push_back(sv);
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw Error("config: top level must be an object");
  require_known_keys(j,
                     {"schema", "model", "protocol", "t", "eps", "seed",
                      "trajectories", "emit_timing", "caps", "sweep"},
                     "");

  ExperimentConfig cfg;
  if (!j.contains("schema")) throw Error("config: missing schema field");
  cfg.schema = static_cast<int>(as_integer(j["schema"], "schema"));
  if (cfg.schema != 1) throw Error("config: unsupported schema version");

  if (j.contains("model")) parse_model(j["model"], cfg.model);
  if (j.contains("protocol")) parse_protocol(j["protocol"], cfg.protocol);

  if (j.contains("t")) cfg.t = as_number(j["t"], "t");
  if (j.contains("eps")) cfg.eps = as_number(j["eps"], "eps");
  if (j.contains("seed")) {
    cfg.seed = static_cast<std::uint64_t>(as_integer(j["seed"], "seed"));
  }
  if (j.contains("trajectories")) {
    cfg.trajectories =
        static_cast<int>(as_integer(j["trajectories"], "trajectories"));
  }
  if (j.contains("emit_timing")) {
    if (!j["emit_timing"].is_boolean()) {
      throw Error("config: emit_timing must be a boolean");
    }
    cfg.emit_timing = j["emit_timing"].get<bool>();
  }
  if (j.contains("caps")) {
    const auto& c = j["caps"];
    if (!c.is_object()) throw Error("config: caps must be an object");
    require_known_keys(c, {"max_dim", "max_r", "max_trajectories"}, "caps.");
    if (c.contains("max_dim")) cfg.caps.max_dim = as_integer(c["max_dim"], "caps.max_dim");
    if (c.contains("max_r")) cfg.caps.max_r = as_integer(c["max_r"], "caps.max_r");
    if (c.contains("max_trajectories")) {
      cfg.caps.max_trajectories =
          as_integer(c["max_trajectories"], "caps.max_trajectories");
    }
  }
  if (j.contains("sweep") && !j["sweep"].is_null()) {
    SweepSpec s;
    parse_sweep(j["sweep"], s);
    cfg.sweep = s;
  }

  if (!(cfg.t >= 0.0)) throw Error("config: t must be nonnegative");
  if (!(cfg.eps > 0.0)) throw Error("config: eps must be positive");
  if (cfg.trajectories < 1) throw Error("config: trajectories must be >= 1");
  if (cfg.trajectories > cfg.caps.max_trajectories) {
    throw Error("config: trajectories exceeds cap");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw Error("emit: cannot create directory '" + parent.string() + "'");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("emit: cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("emit: write failure on '" + path + "'");
}

}  // namespace ipsim::bench
