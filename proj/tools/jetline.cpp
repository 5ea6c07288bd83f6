// jetline: command-line front end.
//
// Exit codes: 0 success, 1 domain error, 2 usage or parse error.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jetline.hpp"

namespace {

using namespace jetline;

constexpr const char* kVersion = "0.1.0";

/// Thrown for input problems that are not parse errors (missing file, bad flag combination).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A result carries the JSON document and a parallel plain-text rendering.
class Result {
 public:
  Result(const std::string& command, const Field& field) {
    json_["command"] = command;
    json_["version"] = kVersion;
    json_["field"] = field.tag();
    json_["inputs"] = Json::object();
  }

  void input(const std::string& key, Json value) { json_["inputs"][key] = std::move(value); }
  void output(const std::string& key, Json value, const std::string& text) {
    json_[key] = std::move(value);
    lines_.push_back(key + ": " + text);
  }
  void output(const std::string& key, Json value) {
    const std::string text = value.dump();
    output(key, std::move(value), text);
  }

  void print(std::ostream& os, bool as_json) const {
    if (as_json) {
      os << json_.dump(2) << "\n";
      return;
    }
    for (const auto& l : lines_) os << l << "\n";
  }

 private:
  Json json_;
  std::vector<std::string> lines_;
};

struct Options {
  std::string field = "q";
  bool json = false;
};

/// --matrix, --matrix-file or --bundle; exactly one is required.
struct BundleInput {
  std::string matrix;
  std::string matrix_file;
  std::string bundle;

  void attach(CLI::App* cmd, const std::string& prefix = "") {
    const std::string p = prefix.empty() ? "" : prefix + "-";
    auto* m = cmd->add_option("--" + p + "matrix", matrix, "transition matrix literal, e.g. [[t^-1,0],[0,t^-3]]");
    auto* f = cmd->add_option("--" + p + "matrix-file", matrix_file, "file holding a matrix literal or its JSON form");
    auto* b = cmd->add_option("--" + p + "bundle", bundle, "bundle shorthand, e.g. O(4) or O(1)+O(3)");
    m->excludes(f)->excludes(b);
    f->excludes(b);
  }

  bool given() const { return !matrix.empty() || !matrix_file.empty() || !bundle.empty(); }

  TransitionBundle load(const Field& field, const std::string& what = "bundle") const {
    if (!matrix.empty()) return TransitionBundle(parse_laurent_matrix(matrix, field));
    if (!bundle.empty()) return TransitionBundle(parse_bundle_matrix(bundle, field));
    if (!matrix_file.empty()) return TransitionBundle(read_matrix_file(field));
    throw UsageError("a " + what + " is required: use --matrix, --matrix-file or --bundle");
  }

 private:
  LaurentMatrix read_matrix_file(const Field& field) const {
    std::ifstream in(matrix_file);
    if (!in) throw UsageError("cannot read matrix file '" + matrix_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const Json j = Json::parse(text, nullptr, false);
    if (!j.is_discarded()) {
      if (j.is_object() && j.contains("matrix")) return laurent_matrix_from_json(j["matrix"], field);
      if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_object()) {
        return laurent_matrix_from_json(j, field);
      }
    }
    return parse_bundle_matrix(text, field);
  }
};

std::string matrix_text(const LaurentMatrix& m) { return m.to_string(); }

Side parse_side(const std::string& s) { return s == "left" ? Side::left : Side::right; }

JetDerivationSpec parse_spec(const std::string& model, int i) {
  if (model == "classical") return JetDerivationSpec::classical();
  JetDerivationSpec spec = JetDerivationSpec::rank3(i);
  spec.validate();
  return spec;
}

Json spec_json(const JetDerivationSpec& spec) {
  Json j{{"model", spec.model == JetModel::classical ? "classical" : "rank3"}};
  if (spec.model == JetModel::rank3) j["i"] = spec.i;
  return j;
}

void describe_bundle(Result& r, const TransitionBundle& e) {
  r.input("matrix", to_json(e.transition()));
}

// --- Commands -----------------------------------------------------------------

Result cmd_splitting(const Field& field, const BundleInput& in) {
  const TransitionBundle e = in.load(field);
  Result r("splitting", field);
  describe_bundle(r, e);
  const SplittingType st = splitting_type(e);
  r.output("splitting", to_json(st), st.to_string());
  r.output("degree", degree(e));
  r.output("rank", e.rank());
  return r;
}

Result cmd_h0(const Field& field, const BundleInput& in, int twist) {
  const TransitionBundle e = in.load(field);
  Result r("h0", field);
  describe_bundle(r, e);
  r.input("twist", twist);
  const H0Report rep = h0_report(e, twist);
  r.output("h0", h0(e, twist));
  r.output("degree_bound", rep.bound);
  r.output("stable", rep.stable());
  return r;
}

Result cmd_h1(const Field& field, const BundleInput& in, int twist) {
  const TransitionBundle e = in.load(field);
  Result r("h1", field);
  describe_bundle(r, e);
  r.input("twist", twist);
  r.output("h1", h1(e, twist));
  r.output("window", h1_window(e, twist));
  return r;
}

Result cmd_jet(const Field& field, int d, const std::string& side, const std::string& model, int i) {
  const JetDerivationSpec spec = parse_spec(model, i);
  Result r("jet", field);
  r.input("d", d);
  r.input("side", side);
  r.input("spec", spec_json(spec));
  const LaurentMatrix l = jet_structure_matrix(d, parse_side(side), spec, field);
  const TransitionBundle e(laurent_mat_inverse(l));
  const SplittingType st = splitting_type(e);
  r.output("structure_matrix", to_json(l), matrix_text(l));
  r.output("transition", to_json(e.transition()), matrix_text(e.transition()));
  r.output("splitting", to_json(st), st.to_string());
  r.output("degree", degree(e));
  r.output("rank", e.rank());
  return r;
}

Result cmd_structure_matrix(const Field& field, int l, int i) {
  Result r("structure-matrix", field);
  r.input("l", l);
  r.input("i", i);
  const LaurentMatrix m = structure_matrix(l, i, field);
  r.output("matrix", to_json(m), matrix_text(m));
  return r;
}

Result cmd_atiyah(const Field& field, const BundleInput& in, const std::string& model, int i) {
  const JetDerivationSpec spec = parse_spec(model, i);
  const TransitionBundle e = in.load(field);
  Result r("atiyah", field);
  describe_bundle(r, e);
  r.input("spec", spec_json(spec));
  const CechClass c = atiyah_class(e, spec);
  Json rep = Json::array();
  std::string rep_text;
  for (const auto& m : c.representative) {
    rep.push_back(to_json(m));
    rep_text += (rep_text.empty() ? "" : "; ") + matrix_text(m);
  }
  r.output("vanishes", c.vanishes, c.vanishes ? "true" : "false");
  r.output("representative", rep, rep_text);
  if (c.witness) {
    Json w{{"chart0", Json::array()}, {"chart1", Json::array()}};
    for (const auto& m : c.witness->chart0) w["chart0"].push_back(to_json(m));
    for (const auto& m : c.witness->chart1) w["chart1"].push_back(to_json(m));
    r.output("witness", w, "verified");
  }
  return r;
}

Result cmd_k0(const Field& field, const BundleInput& in) {
  const TransitionBundle e = in.load(field);
  Result r("k0", field);
  describe_bundle(r, e);
  const K0Class k = k0_class(e);
  r.output("k0", to_json(k), k.to_string());
  r.output("degree", k.degree);
  r.output("rank", k.rank);
  return r;
}

Result cmd_c_class(const Field& field, const BundleInput& left, const BundleInput& right, int d,
                   const std::string& model, int i, bool from_jets) {
  Result r("c-class", field);
  TransitionBundle le = TransitionBundle::line(field, 0);
  TransitionBundle re = le;
  if (from_jets) {
    const JetDerivationSpec spec = parse_spec(model, i);
    r.input("d", d);
    r.input("spec", spec_json(spec));
    le = jet_bundle(d, Side::left, spec, field);
    re = jet_bundle(d, Side::right, spec, field);
  } else {
    le = left.load(field, "left bundle");
    re = right.load(field, "right bundle");
    r.input("left", to_json(le.transition()));
    r.input("right", to_json(re.transition()));
  }
  const K0Class k = c_I_class(le, re);
  r.output("c_class", to_json(k), k.to_string());
  return r;
}

Result cmd_connection(const Field& field, const std::string& idempotent, std::size_t nvars, int probes) {
  if (nvars == 0) nvars = std::max<std::size_t>(1, count_x_variables(idempotent));
  const Idempotent p(parse_poly_matrix(idempotent, field, nvars));
  Result r("connection", field);
  r.input("idempotent", to_json(p.matrix()));
  r.input("variables", nvars);
  const DualBasis db = dual_basis(p);
  const GrassmannConnection nabla(p);
  Json gens = Json::array();
  Json values = Json::array();
  std::string gens_text, values_text;
  for (const auto& g : db.generators) {
    Json gj = Json::array();
    for (const auto& x : g) gj.push_back(to_json(x));
    gens.push_back(gj);
    gens_text += (gens_text.empty() ? "" : "; ") + to_string(g);
    const OmegaTensor v = nabla(g);
    Json vj = Json::array();
    for (const auto& comp : v.components) {
      Json cj = Json::array();
      for (const auto& x : comp) cj.push_back(to_json(x));
      vj.push_back(cj);
    }
    values.push_back(vj);
    values_text += (values_text.empty() ? "" : "; ") + v.to_string();
  }
  Rng rng(0x5eed);
  bool leibniz = true;
  for (int k = 0; k < probes && leibniz; ++k) {
    PolyVec w;
    for (std::size_t j = 0; j < p.size(); ++j) w.push_back(random_multipoly(field, nvars, rng, 3));
    leibniz = nabla.leibniz_defect(random_multipoly(field, nvars, rng, 3), p.apply(w)).is_zero();
  }
  r.output("generators", gens, gens_text);
  r.output("connection", values, values_text);
  r.output("leibniz", leibniz, leibniz ? "true" : "false");
  r.output("probes", probes);
  return r;
}

struct SweepItem {
  std::string model;
  int d;
  int i;
  std::string field;
};

Json run_sweep_item(const SweepItem& item) {
  const Field field = parse_field(item.field);
  const JetDerivationSpec spec = parse_spec(item.model, item.i);
  const SplittingType left = splitting_type(jet_bundle(item.d, Side::left, spec, field));
  const SplittingType right = splitting_type(jet_bundle(item.d, Side::right, spec, field));
  const bool vanishes = atiyah_class(TransitionBundle::line(field, item.d), spec).vanishes;
  Json j{{"model", item.model}, {"d", item.d}};
  if (spec.model == JetModel::rank3) j["i"] = item.i;
  j["field"] = item.field;
  j["left"] = to_json(left);
  j["right"] = to_json(right);
  j["atiyah_vanishes"] = vanishes;
  j["types_agree"] = left == right;
  return j;
}

Result cmd_sweep(const Field& field, const std::string& models, int d_min, int d_max,
                 const std::vector<int>& is, const std::vector<std::string>& fields) {
  std::vector<std::string> field_tags = fields;
  if (field_tags.empty()) field_tags.push_back(field.tag());
  for (const auto& tag : field_tags) parse_field(tag);
  if (d_min > d_max) throw UsageError("--d-min must not exceed --d-max");
  std::vector<SweepItem> items;
  for (const auto& tag : field_tags) {
    for (int d = d_min; d <= d_max; ++d) {
      if (models == "classical" || models == "both") items.push_back({"classical", d, 0, tag});
      if (models == "rank3" || models == "both") {
        for (int i : is) items.push_back({"rank3", d, i, tag});
      }
    }
  }
  std::vector<std::future<Json>> futures;
  futures.reserve(items.size());
  for (const auto& item : items) futures.push_back(std::async(std::launch::async, run_sweep_item, item));
  Json results = Json::array();
  std::string text;
  for (auto& f : futures) {
    Json j = f.get();
    text += "\n  " + j.dump();
    results.push_back(std::move(j));
  }
  Result r("sweep", field);
  r.input("models", models);
  r.input("d_min", d_min);
  r.input("d_max", d_max);
  r.input("i", is);
  r.input("fields", field_tags);
  r.output("results", results, text);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jet bundles, splitting types and Atiyah classes on the projective line"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--field", opt.field, "q or fp:<p>")->capture_default_str();
  app.add_flag("--json", opt.json, "emit JSON");

  int twist = 0;
  int d = 0;
  int l = 0;
  int i = 0;
  std::string side = "left";
  std::string model = "classical";
  std::string idempotent;
  std::size_t nvars = 0;
  int probes = 100;

  BundleInput split_in, h0_in, h1_in, atiyah_in, k0_in, left_in, right_in;

  auto* splitting = app.add_subcommand("splitting", "splitting type, degree and rank of a bundle");
  split_in.attach(splitting);

  auto* h0c = app.add_subcommand("h0", "dimension of global sections of E(n)");
  h0_in.attach(h0c);
  h0c->add_option("--twist,-n", twist, "twist n");

  auto* h1c = app.add_subcommand("h1", "dimension of H^1 of E(n)");
  h1_in.attach(h1c);
  h1c->add_option("--twist,-n", twist, "twist n");

  auto* jet = app.add_subcommand("jet", "left or right jet bundle of O(d)");
  jet->add_option("--d", d, "degree d (l for the rank3 model)")->required();
  jet->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
  jet->add_option("--model", model, "classical or rank3")->check(CLI::IsMember({"classical", "rank3"}));
  jet->add_option("--i", i, "rank3 parameter i in {0,1,2}");

  auto* sm = app.add_subcommand("structure-matrix", "the rank-3 structure matrix for (l, i)");
  sm->add_option("--l", l, "degree l")->required();
  sm->add_option("--i", i, "parameter i in {0,1,2}")->required();

  auto* atiyah = app.add_subcommand("atiyah", "Atiyah class of a bundle and whether it vanishes");
  atiyah_in.attach(atiyah);
  atiyah->add_option("--model", model, "classical or rank3")->check(CLI::IsMember({"classical", "rank3"}));
  atiyah->add_option("--i", i, "rank3 parameter i in {0,1,2}");

  auto* k0 = app.add_subcommand("k0", "class in K0 as (degree, rank)");
  k0_in.attach(k0);

  auto* cclass = app.add_subcommand("c-class", "[left] - [right] in K0");
  left_in.attach(cclass, "left");
  right_in.attach(cclass, "right");
  auto* cd = cclass->add_option("--d", d, "use the jet bundles of O(d)");
  cclass->add_option("--model", model, "classical or rank3")->check(CLI::IsMember({"classical", "rank3"}));
  cclass->add_option("--i", i, "rank3 parameter i in {0,1,2}");

  auto* conn = app.add_subcommand("connection", "dual basis and Grassmann connection of an idempotent");
  conn->add_option("--idempotent,--matrix", idempotent, "idempotent matrix in x1..xn")->required();
  conn->add_option("--vars", nvars, "number of variables (default: largest index used)");
  conn->add_option("--probes", probes, "random Leibniz probes")->check(CLI::NonNegativeNumber);

  std::string models = "both";
  int d_min = 0;
  int d_max = 4;
  std::vector<int> sweep_i{0, 1, 2};
  std::vector<std::string> sweep_fields;
  auto* sweep = app.add_subcommand("sweep", "left/right splittings and Atiyah vanishing over a parameter grid");
  sweep->add_option("--models", models, "classical, rank3 or both")
      ->check(CLI::IsMember({"classical", "rank3", "both"}));
  sweep->add_option("--d-min", d_min, "smallest d");
  sweep->add_option("--d-max", d_max, "largest d");
  sweep->add_option("--i", sweep_i, "rank3 parameters")->delimiter(',');
  sweep->add_option("--fields", sweep_fields, "fields, e.g. q,fp:3")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Field field = parse_field(opt.field);
    std::optional<Result> result;
    if (*splitting) result = cmd_splitting(field, split_in);
    if (*h0c) result = cmd_h0(field, h0_in, twist);
    if (*h1c) result = cmd_h1(field, h1_in, twist);
    if (*jet) result = cmd_jet(field, d, side, model, i);
    if (*sm) result = cmd_structure_matrix(field, l, i);
    if (*atiyah) result = cmd_atiyah(field, atiyah_in, model, i);
    if (*k0) result = cmd_k0(field, k0_in);
    if (*cclass) {
      const bool from_jets = cd->count() > 0;
      if (from_jets && (left_in.given() || right_in.given())) {
        throw UsageError("give either --d or both --left-* and --right-* bundles");
      }
      result = cmd_c_class(field, left_in, right_in, d, model, i, from_jets);
    }
    if (*conn) result = cmd_connection(field, idempotent, nvars, probes);
    if (*sweep) result = cmd_sweep(field, models, d_min, d_max, sweep_i, sweep_fields);
    result->print(std::cout, opt.json);
    return 0;
  } catch (const jetline::ParseError& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const jetline::DivisionByZero& e) {
    // Only reachable from literals such as 1/0 in the input.
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jetline::Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    if (!e.witness().empty()) std::cerr << "witness: " << e.witness() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
