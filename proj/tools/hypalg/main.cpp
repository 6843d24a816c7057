#include <hypalg/hypalg.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kConfig = 1, kAxiom = 2, kNumerical = 3, kConstruction = 4 };

struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

[[noreturn]] void config_error(const std::string& what) { throw Failure(kConfig, "config error: " + what); }

void check(hypalg_status s) {
  if (s == HYPALG_OK) return;
  const int code = s == HYPALG_ERR_CONFIG ? kConfig : s == HYPALG_ERR_CONSTRUCTION ? kConstruction : kNumerical;
  throw Failure(code, hypalg_last_error());
}

std::string g17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------- config

struct FamilySpec {
  std::string kind;  // preset, explicit, symmetric
  std::string name;
  std::map<std::string, std::string> params;
  std::vector<std::string> a, b, c;
  std::string tail_rule, tail_ratio;
};

struct ScanSpec {
  std::optional<std::string> x_min, x_max, step;
  std::string variable = "x";
  std::vector<std::string> x;
  bool include_mass_points = false;
};

struct Config {
  json raw;
  FamilySpec family;
  std::size_t max_level = 512;
  std::size_t window = 512;
  std::size_t display_cap = 16;
  std::size_t elementwise_level = 48;
  std::size_t threads = 0;
  std::vector<std::size_t> truncations{200, 400};
  std::map<std::string, std::string> tolerances;
  std::optional<ScanSpec> scan;
  std::vector<std::string> x;
  std::string arithmetic = "float";
  std::string output = ".";
};

std::string number_text(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return shortest(v.get<double>());
  config_error("field '" + field + "': expected a number or a numeric string");
}

std::size_t index_value(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::size_t>(v.get<std::int64_t>());
  config_error("field '" + field + "': expected a nonnegative integer");
}

std::vector<std::string> number_list(const json& v, const std::string& field) {
  if (!v.is_array()) config_error("field '" + field + "': expected a list");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_text(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

double parse_number(const std::string& text, const std::string& field) {
  double out = 0.0;
  if (hypalg_parse_number(text.c_str(), &out) != HYPALG_OK)
    config_error("field '" + field + "': " + hypalg_last_error());
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) config_error("unknown field '" + (where.empty() ? "" : where + ".") + it.key() + "'");
  }
}

void parse_tail(const json& obj, const std::string& where, FamilySpec& f) {
  if (!obj.contains("tail")) config_error("field '" + where + ".tail': explicit coefficients need a tail rule");
  const json& t = obj["tail"];
  if (t.is_string()) {
    f.tail_rule = t.get<std::string>();
  } else if (t.is_object()) {
    reject_unknown(t, {"rule", "ratio"}, where + ".tail");
    if (!t.contains("rule") || !t["rule"].is_string()) config_error("field '" + where + ".tail.rule': missing");
    f.tail_rule = t["rule"].get<std::string>();
    if (t.contains("ratio")) f.tail_ratio = number_text(t["ratio"], where + ".tail.ratio");
  } else {
    config_error("field '" + where + ".tail': expected a rule name or an object");
  }
  if (f.tail_rule != "constant" && f.tail_rule != "geometric")
    config_error("field '" + where + ".tail.rule': expected 'constant' or 'geometric'");
  if (f.tail_rule == "geometric" && f.tail_ratio.empty())
    config_error("field '" + where + ".tail.ratio': geometric tails need a ratio");
}

FamilySpec parse_family(const json& v) {
  FamilySpec f;
  if (v.is_string()) {
    f.kind = "preset";
    f.name = v.get<std::string>();
    return f;
  }
  if (!v.is_object()) config_error("field 'family': expected a preset name or an object");
  reject_unknown(v, {"preset", "params", "explicit", "symmetric"}, "family");
  if (v.contains("preset")) {
    f.kind = "preset";
    if (!v["preset"].is_string()) config_error("field 'family.preset': expected a name");
    f.name = v["preset"].get<std::string>();
    if (v.contains("params")) {
      if (!v["params"].is_object()) config_error("field 'family.params': expected an object");
      for (auto it = v["params"].begin(); it != v["params"].end(); ++it)
        f.params[it.key()] = number_text(it.value(), "family.params." + it.key());
    }
  } else if (v.contains("explicit")) {
    f.kind = "explicit";
    const json& e = v["explicit"];
    if (!e.is_object()) config_error("field 'family.explicit': expected an object");
    reject_unknown(e, {"a", "b", "c", "tail"}, "family.explicit");
    for (const char* key : {"a", "b", "c"})
      if (!e.contains(key)) config_error(std::string("field 'family.explicit.") + key + "': missing");
    f.a = number_list(e["a"], "family.explicit.a");
    f.b = number_list(e["b"], "family.explicit.b");
    f.c = number_list(e["c"], "family.explicit.c");
    parse_tail(e, "family.explicit", f);
  } else if (v.contains("symmetric")) {
    f.kind = "symmetric";
    const json& e = v["symmetric"];
    if (!e.is_object()) config_error("field 'family.symmetric': expected an object");
    reject_unknown(e, {"b", "tail"}, "family.symmetric");
    if (!e.contains("b")) config_error("field 'family.symmetric.b': missing");
    f.b = number_list(e["b"], "family.symmetric.b");
    parse_tail(e, "family.symmetric", f);
  } else {
    config_error("field 'family': needs one of 'preset', 'explicit', 'symmetric'");
  }
  return f;
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Config cfg;
  try {
    cfg.raw = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(path + ": " + line_column(text, e.byte) + ": " + e.what());
  }
  const json& j = cfg.raw;
  if (!j.is_object()) config_error("top level must be an object");
  reject_unknown(j, {"family", "max_level", "window", "truncations", "tolerances", "scan", "x", "arithmetic",
                     "output", "threads", "display_cap", "elementwise_level"},
                 "");
  if (!j.contains("family")) config_error("field 'family': missing");
  cfg.family = parse_family(j["family"]);
  if (j.contains("max_level")) cfg.max_level = index_value(j["max_level"], "max_level");
  if (j.contains("window")) cfg.window = index_value(j["window"], "window");
  if (j.contains("display_cap")) cfg.display_cap = index_value(j["display_cap"], "display_cap");
  if (j.contains("elementwise_level")) cfg.elementwise_level = index_value(j["elementwise_level"], "elementwise_level");
  if (j.contains("threads")) cfg.threads = index_value(j["threads"], "threads");
  if (j.contains("truncations")) {
    if (!j["truncations"].is_array()) config_error("field 'truncations': expected a list");
    cfg.truncations.clear();
    for (std::size_t i = 0; i < j["truncations"].size(); ++i)
      cfg.truncations.push_back(index_value(j["truncations"][i], "truncations[" + std::to_string(i) + "]"));
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) config_error("field 'tolerances': expected an object");
    reject_unknown(t, {"tol", "ctol", "eps", "sep", "match_tol", "margin", "B"}, "tolerances");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string field = "tolerances." + it.key();
      const std::string value = number_text(it.value(), field);
      if (!(parse_number(value, field) > 0.0)) config_error("field '" + field + "': must be positive");
      cfg.tolerances[it.key()] = value;
    }
  }
  if (j.contains("scan")) {
    const json& s = j["scan"];
    if (!s.is_object()) config_error("field 'scan': expected an object");
    reject_unknown(s, {"x_min", "x_max", "step", "variable", "x", "include_mass_points"}, "scan");
    ScanSpec spec;
    if (s.contains("x_min")) spec.x_min = number_text(s["x_min"], "scan.x_min");
    if (s.contains("x_max")) spec.x_max = number_text(s["x_max"], "scan.x_max");
    if (s.contains("step")) spec.step = number_text(s["step"], "scan.step");
    const int given = spec.x_min.has_value() + spec.x_max.has_value() + spec.step.has_value();
    if (given != 0 && given != 3) config_error("field 'scan': x_min, x_max and step go together");
    if (s.contains("variable")) {
      if (!s["variable"].is_string()) config_error("field 'scan.variable': expected 'x' or 'x_tilde'");
      spec.variable = s["variable"].get<std::string>();
      if (spec.variable != "x" && spec.variable != "x_tilde")
        config_error("field 'scan.variable': expected 'x' or 'x_tilde'");
    }
    if (s.contains("x")) spec.x = number_list(s["x"], "scan.x");
    if (s.contains("include_mass_points")) {
      if (!s["include_mass_points"].is_boolean()) config_error("field 'scan.include_mass_points': expected a boolean");
      spec.include_mass_points = s["include_mass_points"].get<bool>();
    }
    cfg.scan = spec;
  }
  if (j.contains("x")) cfg.x = number_list(j["x"], "x");
  if (j.contains("arithmetic")) {
    if (!j["arithmetic"].is_string()) config_error("field 'arithmetic': expected 'float' or 'rational'");
    cfg.arithmetic = j["arithmetic"].get<std::string>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) config_error("field 'output': expected a path");
    cfg.output = j["output"].get<std::string>();
  }
  if (cfg.arithmetic != "float" && cfg.arithmetic != "rational")
    config_error("field 'arithmetic': expected 'float' or 'rational'");
  return cfg;
}

// ---------------------------------------------------------------- handles

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
  T* get() const { return p; }
  T** out() { return &p; }
};

using FamilyHandle = Handle<hypalg_family, hypalg_family_free>;
using TableHandle = Handle<hypalg_table, hypalg_table_free>;
using AnalysisHandle = Handle<hypalg_analysis, hypalg_analysis_free>;
using ReportsHandle = Handle<hypalg_reports, hypalg_reports_free>;
using MeanHandle = Handle<hypalg_mean, hypalg_mean_free>;

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

void make_family(const FamilySpec& f, FamilyHandle& h) {
  if (f.kind == "preset") {
    std::vector<std::string> keys, values;
    for (const auto& [k, v] : f.params) {
      keys.push_back(k);
      values.push_back(v);
    }
    auto kp = c_strings(keys), vp = c_strings(values);
    check(hypalg_family_preset(f.name.c_str(), kp.data(), vp.data(), kp.size(), h.out()));
  } else if (f.kind == "explicit") {
    auto a = c_strings(f.a), b = c_strings(f.b), c = c_strings(f.c);
    check(hypalg_family_explicit(a.data(), a.size(), b.data(), b.size(), c.data(), c.size(),
                                 f.tail_rule.c_str(), f.tail_ratio.empty() ? nullptr : f.tail_ratio.c_str(),
                                 h.out()));
  } else {
    auto b = c_strings(f.b);
    check(hypalg_family_symmetric(b.data(), b.size(), f.tail_rule.c_str(),
                                  f.tail_ratio.empty() ? nullptr : f.tail_ratio.c_str(), h.out()));
  }
}

hypalg_options make_options(const Config& cfg) {
  hypalg_options o;
  hypalg_options_init(&o);
  auto set = [&](const char* key, double& target) {
    auto it = cfg.tolerances.find(key);
    if (it != cfg.tolerances.end()) target = parse_number(it->second, std::string("tolerances.") + key);
  };
  set("tol", o.tol);
  set("ctol", o.ctol);
  set("eps", o.eps);
  set("sep", o.sep);
  set("match_tol", o.match_tol);
  set("margin", o.margin);
  set("B", o.growth_bound);
  o.window = cfg.window;
  o.max_level = cfg.max_level;
  o.threads = cfg.threads;
  if (cfg.truncations.size() > HYPALG_MAX_TRUNCATIONS) config_error("field 'truncations': too many entries");
  o.truncation_count = cfg.truncations.size();
  for (std::size_t i = 0; i < cfg.truncations.size(); ++i) o.truncations[i] = cfg.truncations[i];
  std::size_t distinct = 0, top = 0;
  for (std::size_t i = 0; i < cfg.truncations.size(); ++i) {
    bool seen = false;
    for (std::size_t k = 0; k < i; ++k) seen = seen || cfg.truncations[k] == cfg.truncations[i];
    if (!seen && cfg.truncations[i] > 0) ++distinct;
    top = std::max(top, cfg.truncations[i]);
  }
  if (distinct < 2) config_error("field 'truncations': need at least two distinct positive sizes");
  if (cfg.max_level < top) config_error("field 'max_level': must be at least the largest truncation");
  return o;
}

// ---------------------------------------------------------------- output

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) config_error("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }
  void write(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw Failure(kNumerical, "cannot write '" + p.string() + "'");
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

ordered_json flags_json(const hypalg_analysis* an) {
  hypalg_class_flags f;
  hypalg_analysis_flags(an, &f);
  ordered_json j;
  j["symmetric"] = static_cast<bool>(f.symmetric);
  j["normalized"] = static_cast<bool>(f.normalized);
  j["compact_type"] = static_cast<bool>(f.compact_type);
  j["nevai_M01"] = static_cast<bool>(f.nevai);
  j["bounded_variation"] = static_cast<bool>(f.bounded_variation);
  j["haar_bounded"] = static_cast<bool>(f.haar_bounded);
  ordered_json ev = ordered_json::object();
  for (std::size_t i = 0; i < f.evidence_count; ++i) {
    const char *k, *v;
    hypalg_analysis_flag_evidence(an, i, &k, &v);
    ev[k] = v;
  }
  j["evidence"] = ev;
  return j;
}

ordered_json support_json(const hypalg_analysis* an) {
  hypalg_support_info s;
  hypalg_analysis_support(an, &s);
  ordered_json j;
  j["essential_interval"] = {number_or_null(s.essential_lo), number_or_null(s.essential_hi)};
  j["essential_source"] = s.essential_source;
  ordered_json res = ordered_json::array();
  for (std::size_t t = 0; t < s.truncation_count; ++t) {
    std::size_t n, count;
    const double* values;
    hypalg_analysis_eigenvalues(an, t, &n, &values, &count);
    res.push_back(n);
  }
  j["resolution"] = res;
  ordered_json mps = ordered_json::array();
  for (std::size_t i = 0; i < s.mass_point_count; ++i) {
    hypalg_mass_point mp;
    hypalg_analysis_mass_point(an, i, &mp);
    mps.push_back({{"x", mp.x}, {"weight", mp.weight}, {"stable", static_cast<bool>(mp.stable)}, {"drift", mp.drift}});
  }
  j["mass_points"] = mps;
  return j;
}

// ---------------------------------------------------------------- commands

struct Common {
  std::string config;
  std::vector<std::string> x;
  std::string out;
  std::string backend;
};

struct Run {
  Config cfg;
  bool rational = false;
  std::string out_dir;
};

Run prepare(const Common& c) {
  Run r;
  r.cfg = load_config(c.config);
  std::string backend = c.backend.empty() ? r.cfg.arithmetic : c.backend;
  if (backend != "float" && backend != "rational") config_error("--backend: expected 'float' or 'rational'");
  r.rational = backend == "rational";
  r.out_dir = c.out.empty() ? r.cfg.output : c.out;
  return r;
}

void require_float(const Run& r, const char* command) {
  if (r.rational)
    config_error(std::string("'") + command +
                 "' runs on the float backend only; the rational backend covers 'build' and 'mean' "
                 "(symmetric families)");
}

int cmd_build(const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Run r = prepare(c);
  FamilyHandle family;
  make_family(r.cfg.family, family);
  TableHandle table;
  check(hypalg_table_build(family.get(), r.cfg.max_level,
                           r.rational ? HYPALG_BACKEND_RATIONAL : HYPALG_BACKEND_FLOAT, table.out()));
  hypalg_options opts;
  hypalg_options_init(&opts);
  double tol = opts.tol;
  if (auto it = r.cfg.tolerances.find("tol"); it != r.cfg.tolerances.end()) tol = parse_number(it->second, "tolerances.tol");
  hypalg_axiom_report rep;
  check(hypalg_table_verify(table.get(), tol, r.cfg.elementwise_level, &rep));

  Output out(r.out_dir);
  std::string csv = "j,k,n,g\n";
  const std::size_t cap = std::min(r.cfg.display_cap, r.cfg.max_level);
  for (std::size_t k = 0; k <= cap; ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      std::size_t lo, count;
      const char* const* values;
      check(hypalg_table_row(table.get(), j, k, &lo, &count, &values));
      for (std::size_t i = 0; i < count; ++i)
        csv += std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(lo + i) + "," + values[i] + "\n";
    }
  }
  out.write("table.csv", csv);

  std::ostringstream ax;
  ax << "family: " << hypalg_family_name(family.get()) << "\n"
     << "backend: " << (r.rational ? "rational" : "float") << "\n"
     << "max_level: " << r.cfg.max_level << "\n"
     << "tol: " << (r.rational ? std::string("exact") : shortest(tol)) << "\n"
     << "result: " << (rep.passed ? "pass" : "fail") << "\n"
     << "pairs_checked: " << rep.pairs_checked << "\n"
     << "commutativity_elementwise_level: " << rep.commutativity_elementwise_level << "\n";
  if (!rep.passed) {
    ax << "failure: " << rep.failure << "\n"
       << "witness: j=" << rep.j << " k=" << rep.k << " n=" << rep.n << "\n"
       << "value: " << rep.value << "\n"
       << "message: " << rep.message << "\n";
  }
  out.write("axioms.txt", ax.str());

  std::cout << hypalg_family_name(family.get()) << ": axioms " << (rep.passed ? "pass" : "FAIL") << " to level "
            << r.cfg.max_level << " (" << rep.pairs_checked << " pairs, "
            << static_cast<long>(elapsed_ms(t0)) << " ms)\n";
  if (!rep.passed) {
    if (!r.rational)
      std::cout << "note: the float recursion divides by a_j; when a_j tends to 0 rounding can produce "
                   "spurious witnesses, so confirm with --backend rational\n";
    std::cout << "witness: " << rep.failure << " at (j,k,n) = (" << rep.j << "," << rep.k << "," << rep.n
              << "), value " << rep.value << "\n";
    return kAxiom;
  }
  return kOk;
}

void make_analysis(const Run& r, FamilyHandle& family, AnalysisHandle& an) {
  make_family(r.cfg.family, family);
  hypalg_options opts = make_options(r.cfg);
  check(hypalg_analysis_create(family.get(), &opts, an.out()));
}

int cmd_spectrum(const Common& c) {
  Run r = prepare(c);
  require_float(r, "spectrum");
  FamilyHandle family;
  AnalysisHandle an;
  make_analysis(r, family, an);
  hypalg_support_info s;
  hypalg_analysis_support(an.get(), &s);
  std::string spectrum = "truncation,index,eigenvalue\n";
  for (std::size_t t = 0; t < s.truncation_count; ++t) {
    std::size_t n, count;
    const double* values;
    check(hypalg_analysis_eigenvalues(an.get(), t, &n, &values, &count));
    for (std::size_t i = 0; i < count; ++i)
      spectrum += std::to_string(n) + "," + std::to_string(i) + "," + g17(values[i]) + "\n";
  }
  std::string masses = "x,weight,stable\n";
  for (std::size_t i = 0; i < s.mass_point_count; ++i) {
    hypalg_mass_point mp;
    check(hypalg_analysis_mass_point(an.get(), i, &mp));
    masses += g17(mp.x) + "," + g17(mp.weight) + "," + (mp.stable ? "true" : "false") + "\n";
  }
  Output out(r.out_dir);
  out.write("spectrum.csv", spectrum);
  out.write("masspoints.csv", masses);
  std::cout << hypalg_family_name(family.get()) << ": essential interval [" << shortest(s.essential_lo) << ", "
            << shortest(s.essential_hi) << "] (" << s.essential_source << "), " << s.mass_point_count
            << " mass point(s)\n";
  return kOk;
}

std::vector<double> parse_points(const std::vector<std::string>& texts, const std::string& field) {
  std::vector<double> out;
  for (const auto& t : texts) out.push_back(parse_number(t, field));
  return out;
}

int report_points(const Run& r, const char* command, FamilyHandle& family, AnalysisHandle& an,
                  const std::vector<double>& xs, std::chrono::steady_clock::time_point t0) {
  const auto t_analysis = std::chrono::steady_clock::now();
  ReportsHandle reports;
  check(hypalg_analysis_run(an.get(), xs.data(), xs.size(), reports.out()));
  const double analysis_ms = elapsed_ms(t_analysis);

  std::string csv = "x,verdict,l1,l2sq,isolated,clause\n";
  ordered_json items = ordered_json::array();
  for (std::size_t i = 0; i < hypalg_reports_count(reports.get()); ++i) {
    hypalg_report rep;
    check(hypalg_reports_get(reports.get(), i, &rep));
    auto norm_text = [&](double v, const char* status) {
      if (!rep.has_norms) return std::string();
      return std::string(status) == "converged" ? g17(v) : std::string("DIVERGENT");
    };
    csv += g17(rep.x) + "," + rep.verdict + "," + norm_text(rep.l1, rep.l1_status) + "," +
           norm_text(rep.l2sq, rep.l2sq_status) + "," + (rep.isolated ? "true" : "false") + "," + rep.clause + "\n";

    ordered_json item;
    item["x"] = rep.x;
    item["x_tilde"] = number_or_null(rep.x_tilde);
    item["verdict"] = rep.verdict;
    item["clause"] = rep.clause;
    if (rep.has_norms) {
      item["norms"] = {{"l1", number_or_null(rep.l1)},
                       {"l1_status", rep.l1_status},
                       {"l2sq", number_or_null(rep.l2sq)},
                       {"l2sq_status", rep.l2sq_status},
                       {"ratio_estimate", number_or_null(rep.ratio_estimate)},
                       {"closed_form_ratio", number_or_null(rep.closed_form_ratio)},
                       {"growth", number_or_null(rep.growth)}};
    }
    item["isolated"] = static_cast<bool>(rep.isolated);
    item["method"] = rep.method;
    if (rep.has_mean) {
      item["mean"] = {{"truncation", rep.mean_truncation},
                      {"normalization_residual", rep.mean_normalization_residual},
                      {"idempotency_residual", rep.mean_idempotency_residual},
                      {"eigen_residual", rep.mean_eigen_residual}};
    }
    ordered_json ev = ordered_json::object();
    for (std::size_t e = 0; e < rep.evidence_count; ++e) {
      const char *k, *v;
      hypalg_reports_evidence(reports.get(), i, e, &k, &v);
      ev[k] = v;
    }
    item["evidence"] = ev;
    items.push_back(item);
    std::cout << g17(rep.x) << "  " << rep.verdict << "  [" << rep.clause << "]\n";
  }
  hypalg_corollary cor;
  hypalg_reports_corollary(reports.get(), an.get(), &cor);

  ordered_json bundle;
  bundle["tool"] = {{"name", "hypalg"}, {"version", hypalg_version()}};
  bundle["command"] = command;
  bundle["backend"] = "float";
  bundle["config"] = r.cfg.raw;
  bundle["family"] = hypalg_family_name(family.get());
  bundle["flags"] = flags_json(an.get());
  bundle["support"] = support_json(an.get());
  bundle["reports"] = items;
  bundle["corollary"] = {{"antecedent", static_cast<bool>(cor.antecedent)},
                         {"conclusion", static_cast<bool>(cor.conclusion)},
                         {"holds", static_cast<bool>(cor.holds)},
                         {"sampled", cor.sampled}};
  bundle["timings_ms"] = {{"analysis", analysis_ms}, {"total", elapsed_ms(t0)}};

  Output out(r.out_dir);
  out.write("verdicts.csv", csv);
  out.write("report.json", bundle.dump(2) + "\n");
  if (cor.antecedent)
    std::cout << "corollary: " << (cor.holds ? "holds" : "FAILS") << "\n";
  else
    std::cout << "corollary: not applicable (some sampled point has no unique mean)\n";
  return kOk;
}

int cmd_analyze(const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Run r = prepare(c);
  require_float(r, "analyze");
  const std::vector<std::string>& texts = c.x.empty() ? r.cfg.x : c.x;
  if (texts.empty()) config_error("analyze needs at least one --x (or an 'x' list in the config)");
  const std::vector<double> xs = parse_points(texts, "x");
  FamilyHandle family;
  AnalysisHandle an;
  make_analysis(r, family, an);
  return report_points(r, "analyze", family, an, xs, t0);
}

int cmd_scan(const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Run r = prepare(c);
  require_float(r, "scan");
  if (!r.cfg.scan) config_error("scan needs a 'scan' section");
  const ScanSpec& spec = *r.cfg.scan;
  FamilyHandle family;
  AnalysisHandle an;
  make_analysis(r, family, an);
  std::vector<double> grid;
  if (spec.x_min) {
    double* values = nullptr;
    std::size_t count = 0;
    if (hypalg_grid(spec.x_min->c_str(), spec.x_max->c_str(), spec.step->c_str(), &values, &count) != HYPALG_OK)
      config_error(std::string("field 'scan': ") + hypalg_last_error());
    grid.assign(values, values + count);
    hypalg_free_array(values);
  }
  for (double v : parse_points(spec.x, "scan.x")) grid.push_back(v);
  std::vector<double> xs;
  for (double v : grid) xs.push_back(spec.variable == "x_tilde" ? hypalg_analysis_from_tilde(an.get(), v) : v);
  if (spec.include_mass_points) {
    hypalg_support_info s;
    hypalg_analysis_support(an.get(), &s);
    for (std::size_t i = 0; i < s.mass_point_count; ++i) {
      hypalg_mass_point mp;
      check(hypalg_analysis_mass_point(an.get(), i, &mp));
      xs.push_back(mp.x);
    }
  }
  for (double x : xs)
    if (!std::isfinite(x)) config_error("field 'scan.variable': x_tilde is undefined for this family");
  if (xs.empty()) config_error("field 'scan': the grid is empty");
  return report_points(r, "scan", family, an, xs, t0);
}

int cmd_mean(const Common& c) {
  Run r = prepare(c);
  const std::vector<std::string>& texts = c.x.empty() ? r.cfg.x : c.x;
  if (texts.size() != 1) config_error("mean needs exactly one --x");
  FamilyHandle family;
  make_family(r.cfg.family, family);
  MeanHandle mean;
  AnalysisHandle an;
  hypalg_status st;
  if (r.rational) {
    st = hypalg_mean_create_exact(family.get(), texts[0].c_str(), mean.out());
  } else {
    const double x = parse_number(texts[0], "x");
    hypalg_options opts = make_options(r.cfg);
    check(hypalg_analysis_create(family.get(), &opts, an.out()));
    st = hypalg_mean_create(an.get(), x, mean.out());
  }
  if (st == HYPALG_ERR_CONSTRUCTION) {
    const std::string kind = hypalg_last_error_kind();
    std::string note = kind == "OutsideDual"
                           ? "OUTSIDE_DUAL: x does not parametrize a bounded character, so there is no alpha-mean to build."
                           : "A unique alpha-mean exists only when alpha lies in l1 and l2 (then m = alpha / ||alpha||_2^2); "
                             "the trivial character is square summable only when the hypergroup is compact.";
    throw Failure(kConstruction, std::string(hypalg_last_error()) + "\n" + note);
  }
  check(st);

  hypalg_mean_info info;
  hypalg_mean_info_get(mean.get(), &info);
  std::string csv = "n,m,h\n";
  for (std::size_t n = 0; n <= info.truncation; ++n) {
    const char *m, *h;
    check(hypalg_mean_entry(mean.get(), n, &m, &h));
    csv += std::to_string(n) + "," + m + "," + h + "\n";
  }
  std::ostringstream res;
  res << "x: " << info.x << "\n"
      << "backend: " << (r.rational ? "rational" : "float") << "\n"
      << "truncation: " << info.truncation << "\n"
      << "l1: " << info.l1 << "\n"
      << "l2sq: " << info.l2sq << "\n"
      << "tail_bound: " << g17(info.tail_bound) << "\n"
      << "normalization_residual: " << info.normalization_text << "\n"
      << "idempotency_residual: " << info.idempotency_text << "\n"
      << "eigen_residual: " << info.eigen_text << "\n"
      << "pairs_tested: " << info.pairs_tested << "\n"
      << "verified: " << (info.passed ? "true" : "false") << "\n";
  Output out(r.out_dir);
  out.write("mean.csv", csv);
  out.write("residuals.txt", res.str());
  std::cout << "mean at x = " << info.x << ": support 0.." << info.truncation << ", residuals "
            << info.normalization_text << " / " << info.idempotency_text << " / " << info.eigen_text
            << (info.passed ? " (verified)" : " (NOT verified)") << "\n";
  return info.passed ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypalg: harmonic analysis and amenability of discrete commutative hypergroups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hypalg_version());

  Common common;
  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Common&);
  };
  const Sub subs[] = {
      {"build", "build the linearization table and verify the hypergroup axioms", cmd_build},
      {"spectrum", "estimate the support of the orthogonality measure", cmd_spectrum},
      {"analyze", "classify characters at the given points", cmd_analyze},
      {"scan", "classify characters over the configured grid", cmd_scan},
      {"mean", "construct and verify the alpha-mean at one point", cmd_mean},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> commands;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", common.config, "JSON configuration file")->required();
    sub->add_option("--x", common.x, "evaluation point (repeatable)")->allow_extra_args(false);
    sub->add_option("--out", common.out, "output directory (overrides config 'output')");
    sub->add_option("--backend", common.backend, "rational or float (overrides config 'arithmetic')");
    commands.emplace_back(sub, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }

  try {
    for (auto& [sub, s] : commands)
      if (sub->parsed()) return s->run(common);
  } catch (const Failure& f) {
    std::cerr << "hypalg: " << f.what() << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "hypalg: " << e.what() << "\n";
    return kNumerical;
  }
  return kConfig;
}
