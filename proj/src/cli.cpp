#include "covmap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "covmap/catalog.hpp"
#include "covmap/covmaps.hpp"
#include "covmap/errors.hpp"
#include "covmap/groups.hpp"
#include "covmap/irreps.hpp"
#include "covmap/positivity.hpp"
#include "covmap/reporting.hpp"
#include "covmap/scan.hpp"

namespace covmap::cli {

namespace {

using nlohmann::json;

double parse_number(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || !std::isfinite(v))
    throw ValidationError(what + ": not a finite number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_number(part, what));
  if (out.empty()) throw ValidationError(what + ": empty list");
  return out;
}

Axis parse_axis(const std::string& name, const std::string& spec) {
  const auto parts = split(spec, ':');
  Axis a{name, 0, 0, 1};
  if (parts.size() == 1) {
    a.lo = a.hi = parse_number(parts[0], name);
  } else if (parts.size() == 3) {
    a.lo = parse_number(parts[0], name);
    a.hi = parse_number(parts[1], name);
    a.step = parse_number(parts[2], name);
    if (!(a.step > 0)) throw ValidationError(name + ": step must be positive");
  } else {
    throw ValidationError(name + ": expected lo:hi:step or a single value, got '" + spec + "'");
  }
  return a;
}

struct Common {
  std::string group;
  int d = 3;
  int n = 3;
  std::string out;
  double tol_psd = 1e-9;
  double tol_eq = 1e-10;
};

std::string family_key(const Common& c) {
  std::string g = c.group;
  std::transform(g.begin(), g.end(), g.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (g == "mu") return "mu:" + std::to_string(c.d) + "," + std::to_string(c.n);
  return g;
}

void check_tolerances(const Common& c) {
  if (!(c.tol_psd >= 0) || !std::isfinite(c.tol_psd)) throw ValidationError("--tol-psd must be >= 0");
  if (!(c.tol_eq >= 0) || !std::isfinite(c.tol_eq)) throw ValidationError("--tol-eq must be >= 0");
}

void check_mu_dims(const Common& c) {
  if (c.d < 2 || c.d > 12) throw ValidationError("--d must be in 2..12");
  if (c.n < 1 || c.n > 64) throw ValidationError("--n must be in 1..64");
}

void emit(const json& j, const Common& c, const std::vector<std::string>& argv, std::optional<std::uint64_t> seed,
          std::ostream& out) {
  if (c.out.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  write_text(c.out, j.dump(2) + "\n");
  write_text(c.out + ".meta.json", metadata_json(argv, seed).dump(2) + "\n");
}

void add_tolerances(CLI::App* app, Common& c) {
  app->add_option("--tol-psd", c.tol_psd, "relative PSD tolerance (default 1e-9)");
  app->add_option("--tol-eq", c.tol_eq, "equality / hermiticity tolerance (default 1e-10)");
}

void add_mu_dims(CLI::App* app, Common& c) {
  app->add_option("--d", c.d, "matrix size for --group mu (default 3)");
  app->add_option("--n", c.n, "root-of-unity order for --group mu (default 3)");
}

const char* kGroupHelp = "s3, s4, q, mu (with --d/--n) or mu:d,n";
const char* kParamHelp =
    "spectral parameters in canonical order: s3 l_id,l_sgn,l_lambda; s4 l_id,l_lmb1,l_lmb2,l_lmb3; "
    "q l_id,l_t1,l_t2,l_t3; mu l_id,alpha,beta";

json group_info(const Common& c) {
  GroupPtr g;
  std::string key = family_key(c);
  if (key.rfind("mu:", 0) == 0 && c.group == "mu") check_mu_dims(c);
  g = group_from_name(key);
  json sizes = json::array();
  for (const auto& cls : g->classes()) sizes.push_back(cls.size());
  json reps = json::array();
  for (const auto& cls : g->classes()) reps.push_back(g->label(cls.front()));
  json gens = json::array();
  for (auto e : g->generators()) gens.push_back(g->label(e));
  const auto axioms = verify_group_axioms(*g);
  return {{"group", g->name()},      {"order", g->order()},         {"class_sizes", sizes},
          {"class_representatives", reps}, {"generators", gens}, {"axioms_ok", axioms.ok()}};
}

UnitaryRep resolve_rep(const Common& c, const std::string& irrep) {
  std::string key = family_key(c);
  if (c.group == "mu") check_mu_dims(c);
  return rep_by_name(group_from_name(key), irrep);
}

json irrep_verify(const Common& c, const std::string& irrep) {
  const UnitaryRep rep = resolve_rep(c, irrep);
  const bool exhaustive = rep.group->order() <= 720;
  const RepReport r = verify_rep(rep, exhaustive);
  const double tol = c.tol_eq;
  return {{"group", rep.group->name()},
          {"irrep", rep.label},
          {"dim", rep.dim},
          {"homomorphism_error", r.homomorphism_error},
          {"unitarity_error", r.unitarity_error},
          {"identity_error", r.identity_error},
          {"class_function_error", r.class_function_error},
          {"irreducibility_norm", r.irreducibility},
          {"irreducible", std::abs(r.irreducibility - 1.0) <= 1e-10},
          {"exhaustive", exhaustive},
          {"passed", r.passed(tol) && std::abs(r.irreducibility - 1.0) <= 1e-10}};
}

json irrep_show(const Common& c, const std::string& irrep, const std::string& element) {
  const UnitaryRep rep = resolve_rep(c, irrep);
  const GroupPtr& g = rep.group;
  std::optional<std::size_t> idx = g->find_label(element);
  if (!idx && g->family() == GroupFamily::symmetric) idx = g->find(parse_permutation(element, g->degree()));
  if (!idx) throw ValidationError("unknown element '" + element + "' of " + g->name());
  return {{"group", g->name()}, {"irrep", rep.label}, {"element", g->label(*idx)}, {"matrix", matrix_to_json(rep(*idx))}};
}

ProjectorFamily resolve_family(const Common& c) {
  if (c.group == "mu") check_mu_dims(c);
  return family_for(family_key(c), c.d);
}

json map_build(const Common& c, const std::string& lstr) {
  const ProjectorFamily f = resolve_family(c);
  const CovariantMap cm = f.make_map(parse_list(lstr, "--l"));
  const LinearMapOnMatrices m = assemble(cm, f);
  return {{"group", f.group_name()}, {"irrep", f.irrep_label()}, {"theta", f.theta()},
          {"l", cm.real_params()},    {"mat", matrix_to_json(m.mat)}, {"choi", matrix_to_json(choi(m).matrix)}};
}

struct SearchFlags {
  std::uint64_t seed = 0;
  int restarts = 64;
  int iters = 200;
};

ClassifyOptions make_options(const Common& c, const SearchFlags& s) {
  check_tolerances(c);
  if (s.restarts < 1 || s.restarts > 100000) throw ValidationError("--restarts must be in 1..100000");
  if (s.iters < 1 || s.iters > 100000) throw ValidationError("--iters must be in 1..100000");
  ClassifyOptions o;
  o.tol_psd = c.tol_psd;
  o.tol_eq = c.tol_eq;
  o.search = {s.restarts, s.iters, s.seed};
  return o;
}

json classify_cmd(const Common& c, const std::string& lstr, const SearchFlags& s) {
  const ClassifyOptions opts = make_options(c, s);
  const ProjectorFamily f = resolve_family(c);
  const CovariantMap cm = f.make_map(parse_list(lstr, "--l"));
  const auto exact = exact_predicate(f);
  const ClassificationReport r = classify(f, cm, opts, exact ? &*exact : nullptr);
  return report_to_json(r);
}

RegionScan scan_cmd(const Common& c, const std::string& ranges, const std::string& alpha, const std::string& beta,
                    const SearchFlags& s, int jobs) {
  const ClassifyOptions opts = make_options(c, s);
  if (jobs < 1 || jobs > 1024) throw ValidationError("--jobs must be in 1..1024");
  const ProjectorFamily f = resolve_family(c);
  const auto names = parameter_names(f);
  std::map<std::string, Axis> given;
  auto put = [&](const std::string& name, const std::string& spec) {
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw ValidationError("unknown scan parameter '" + name + "' for " + f.group_name());
    if (!given.emplace(name, parse_axis(name, spec)).second)
      throw ValidationError("parameter '" + name + "' given twice");
  };
  if (!ranges.empty()) {
    for (const auto& item : split(ranges, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ValidationError("--range items look like name=lo:hi:step");
      put(item.substr(0, eq), item.substr(eq + 1));
    }
  }
  if (!alpha.empty()) put("alpha", alpha);
  if (!beta.empty()) put("beta", beta);
  ScanSpec spec;
  for (const auto& n : names) {
    auto it = given.find(n);
    if (it == given.end()) throw ValidationError("missing range for parameter '" + n + "'");
    spec.axes.push_back(it->second);
  }
  if (grid_size(spec.axes) > 5'000'000) throw ValidationError("grid larger than 5e6 points");
  spec.options = opts;
  spec.seed = s.seed;
  const auto exact = exact_predicate(f);
  return scan_parallel(f, spec, exact ? &*exact : nullptr, jobs);
}

json catalog_mu(const Common& c, double alpha, double beta, bool full, const SearchFlags& s) {
  if (c.d < 3 || c.d > 12) throw ValidationError("--d must be in 3..12");
  const ClassifyOptions opts = make_options(c, s);
  const MUParams p{c.d, alpha, beta};
  const MuCp cp = mu_cp(p, c.tol_psd);
  json rows = json::array();
  for (const auto& r : mu_table_rows(p))
    rows.push_back({{"value", r.value}, {"printed", r.printed}, {"condition", r.condition}});
  json j = {{"d", c.d},
            {"alpha", alpha},
            {"beta", beta},
            {"exact_positive", mu_exact_positive(p)},
            {"cp", {{"holds", cp.cp}, {"values", cp.values}}},
            {"cop", mu_cop(p)},
            {"necessary_rows", rows}};
  if (c.d == 3) {
    const auto corr = mu_choi_correspondence(alpha, beta);
    j["choi_correspondence"] =
        corr ? json{{"a", corr->a}, {"b", corr->b}, {"c", corr->c}} : json(nullptr);
  }
  if (full) {
    const ProjectorFamily f = ProjectorFamily::monomial(c.d, std::max(3, c.n));
    const auto exact = exact_predicate(f);
    j["report"] = report_to_json(classify(f, f.make_map(p.spectral()), opts, exact ? &*exact : nullptr));
  }
  return j;
}

json catalog_quat(const std::string& lstr) {
  const auto l = parse_list(lstr, "--l");
  if (l.size() != 4) throw ValidationError("--l needs 4 values l_id,l_t1,l_t2,l_t3");
  const QuatParams p{l[0], l[1], l[2], l[3]};
  const auto delta = quat_delta_transform(p.array());
  const QuatDecomposition dec = quat_decompose(p);
  const char* slots[] = {"id", "t1", "t2", "t3"};
  return {{"l", l},
          {"delta", delta},
          {"cp", quat_cp(p)},
          {"exact_positive", quat_exact_positive(p)},
          {"negative_slot", dec.negative_slot < 0 ? json(nullptr) : json(slots[dec.negative_slot])},
          {"psi1", dec.psi1.spectral()},
          {"psi2", dec.psi2.spectral()},
          {"psi1_cp", is_cp(choi(quat_map(dec.psi1))).holds},
          {"psi2_cp", is_cp(choi(quat_map(dec.psi2))).holds},
          {"reconstruction_error", dec.reconstruction_error}};
}

json catalog_choi_compare(double alpha, double beta) {
  const MUParams p{3, alpha, beta};
  const auto corr = mu_choi_correspondence(alpha, beta);
  const RVector em = hermitian_eigenvalues(choi(mu_map(p)).matrix);
  const RVector es = hermitian_eigenvalues(s4_choi({alpha, beta, alpha}).matrix);
  json j = {{"alpha", alpha},
            {"beta", beta},
            {"mu_exact_positive", mu_exact_positive(p)},
            {"mu_cp", mu_cp(p).cp},
            {"similarity_deviation", s4_mu_similarity(alpha, beta)},
            {"spectral_deviation", (em - es).cwiseAbs().maxCoeff()}};
  if (corr) {
    j["choi_params"] = {{"a", corr->a}, {"b", corr->b}, {"c", corr->c}};
    j["choi_difference"] = max_abs_diff(choi(gen_choi_map(*corr)).matrix, choi(mu_map(p)).matrix);
    j["gen_choi_positive_not_cp"] = gen_choi_positive_not_cp(*corr);
  } else {
    j["choi_params"] = nullptr;
  }
  return j;
}

json catalog_ssv(const std::string& etas) {
  const auto e = parse_list(etas, "--eta");
  if (e.size() != 3) throw ValidationError("--eta needs 3 values");
  SSV s{{e[0], e[1], e[2]}, std::nullopt, std::nullopt};
  const FujiwaraAlgoet fa = fujiwara_algoet(s);
  const QuatParams q = quat_from_ssv(s.eta);
  const LinearMapOnMatrices ch = ssv_channel(s);
  const RMatrix b = bloch_matrix(quat_map(q));
  json bloch = json::array();
  for (int i = 0; i < 3; ++i) bloch.push_back({b(i, 0), b(i, 1), b(i, 2)});
  return {{"eta", e},
          {"fujiwara_algoet", {{"cp", fa.cp}, {"p", fa.p}}},
          {"quaternion_l", q.spectral()},
          {"quat_cp", quat_cp(q)},
          {"quat_exact_positive", quat_exact_positive(q)},
          {"channel_choi_psd", is_cp(choi(ch)).holds},
          {"quaternion_map_matches_channel", max_abs_diff(ch.mat, quat_map(q).mat) < 1e-12},
          {"bloch_matrix", bloch}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Irreducibly covariant linear maps: construction and positivity classification", "covmap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common c;
  SearchFlags s;
  std::string irrep = "standard", element, lstr, ranges, alpha_range, beta_range, etas;
  double alpha = 0, beta = 0;
  bool full = false;
  int jobs = 1;
  std::string format = "csv";
  if (const char* env = std::getenv("COVMAP_JOBS")) {
    try {
      jobs = std::stoi(env);
    } catch (const std::exception&) {
      err << "COVMAP_JOBS must be an integer\n";
      return kValidation;
    }
  }

  auto* group = app.add_subcommand("group", "finite group queries");
  group->require_subcommand(1);
  auto* ginfo = group->add_subcommand("info", "order, class sizes and generators as JSON");
  ginfo->add_option("--group", c.group, kGroupHelp)->required();
  add_mu_dims(ginfo, c);

  auto* irr = app.add_subcommand("irrep", "irreducible representations");
  irr->require_subcommand(1);
  auto* iver = irr->add_subcommand("verify", "homomorphism, unitarity and irreducibility report");
  iver->add_option("--group", c.group, kGroupHelp)->required();
  iver->add_option("--irrep", irrep, "standard, lambda, lambda1, lambda3, t4, id, sgn, t1..t3, defining");
  add_mu_dims(iver, c);
  add_tolerances(iver, c);
  auto* ishow = irr->add_subcommand("show", "print the matrix of one element");
  ishow->add_option("--group", c.group, kGroupHelp)->required();
  ishow->add_option("--irrep", irrep, "irrep name (default standard)");
  ishow->add_option("--element", element, "element label, e.g. (23), (01)(23), -k, e")->required();
  add_mu_dims(ishow, c);

  auto* map = app.add_subcommand("map", "covariant map construction");
  map->require_subcommand(1);
  auto* mbuild = map->add_subcommand("build", "write mat(Φ) and J(Φ) as JSON");
  mbuild->add_option("--group", c.group, kGroupHelp)->required();
  mbuild->add_option("--l", lstr, kParamHelp)->required();
  mbuild->add_option("--out", c.out, "output path (stdout if omitted)");
  add_mu_dims(mbuild, c);

  auto add_search = [&](CLI::App* a, bool seed_required) {
    auto* opt = a->add_option("--seed", s.seed, "seed for the product-vector search");
    if (seed_required) opt->required();
    a->add_option("--restarts", s.restarts, "random restarts (default 64)");
    a->add_option("--iters", s.iters, "alternations per restart (default 200)");
    add_tolerances(a, c);
  };

  auto* cls = app.add_subcommand("classify", "classification report as JSON");
  cls->add_option("--group", c.group, kGroupHelp)->required();
  cls->add_option("--l", lstr, kParamHelp)->required();
  cls->add_option("--out", c.out, "output path (stdout if omitted)");
  add_mu_dims(cls, c);
  add_search(cls, true);

  auto* scan = app.add_subcommand("scan", "classify every point of a parameter grid");
  scan->add_option("--group", c.group, kGroupHelp)->required();
  scan->add_option("--range", ranges, "name=lo:hi:step[,name=...]; a single value fixes the parameter");
  scan->add_option("--alpha", alpha_range, "alpha range lo:hi:step (mu)");
  scan->add_option("--beta", beta_range, "beta range lo:hi:step (mu)");
  scan->add_option("--out", c.out, "output path (stdout if omitted)");
  scan->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--jobs", jobs, "worker threads (default $COVMAP_JOBS or 1)");
  add_mu_dims(scan, c);
  add_search(scan, true);

  auto* cat = app.add_subcommand("catalog", "closed-form map families");
  cat->require_subcommand(1);
  auto* cmu = cat->add_subcommand("mu", "monomial-unitary map M(alpha, beta)");
  cmu->add_option("--d", c.d, "dimension d >= 3 (default 3)");
  cmu->add_option("--n", c.n, "root-of-unity order (default 3)");
  cmu->add_option("--alpha", alpha, "alpha")->required();
  cmu->add_option("--beta", beta, "beta")->required();
  cmu->add_flag("--full-report", full, "include the full classification report");
  cmu->add_option("--out", c.out, "output path (stdout if omitted)");
  add_search(cmu, false);
  auto* cq = cat->add_subcommand("quat-decompose", "split a quaternion map into CP + CP∘T");
  cq->add_option("--l", lstr, "l_id,l_t1,l_t2,l_t3")->required();
  cq->add_option("--out", c.out, "output path (stdout if omitted)");
  auto* cc = cat->add_subcommand("choi-compare", "compare M(alpha, beta) with the generalized Choi map");
  cc->add_option("--alpha", alpha, "alpha")->required();
  cc->add_option("--beta", beta, "beta")->required();
  cc->add_option("--out", c.out, "output path (stdout if omitted)");
  auto* cs = cat->add_subcommand("ssv", "unital qubit channel from signed singular values");
  cs->add_option("--eta", etas, "eta1,eta2,eta3")->required();
  cs->add_option("--out", c.out, "output path (stdout if omitted)");

  std::vector<std::string> argv{"covmap"};
  argv.insert(argv.end(), args.begin(), args.end());
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    if (dynamic_cast<const CLI::ConversionError*>(&e) || dynamic_cast<const CLI::ValidationError*>(&e))
      return kValidation;
    return kUsage;
  }

  try {
    if (std::isnan(alpha) || std::isnan(beta) || std::isinf(alpha) || std::isinf(beta))
      throw ValidationError("--alpha/--beta must be finite");
    if (ginfo->parsed()) {
      emit(group_info(c), c, argv, std::nullopt, out);
    } else if (iver->parsed()) {
      emit(irrep_verify(c, irrep), c, argv, std::nullopt, out);
    } else if (ishow->parsed()) {
      emit(irrep_show(c, irrep, element), c, argv, std::nullopt, out);
    } else if (mbuild->parsed()) {
      emit(map_build(c, lstr), c, argv, std::nullopt, out);
    } else if (cls->parsed()) {
      emit(classify_cmd(c, lstr, s), c, argv, s.seed, out);
    } else if (scan->parsed()) {
      const RegionScan r = scan_cmd(c, ranges, alpha_range, beta_range, s, jobs);
      const std::string text = format == "json" ? scan_to_json(r).dump(2) + "\n" : region_csv(r);
      if (c.out.empty()) {
        out << text;
      } else {
        write_text(c.out, text);
        write_text(c.out + ".meta.json", metadata_json(argv, s.seed).dump(2) + "\n");
      }
    } else if (cmu->parsed()) {
      emit(catalog_mu(c, alpha, beta, full, s), c, argv, s.seed, out);
    } else if (cq->parsed()) {
      emit(catalog_quat(lstr), c, argv, std::nullopt, out);
    } else if (cc->parsed()) {
      emit(catalog_choi_compare(alpha, beta), c, argv, std::nullopt, out);
    } else if (cs->parsed()) {
      emit(catalog_ssv(etas), c, argv, std::nullopt, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace covmap::cli
