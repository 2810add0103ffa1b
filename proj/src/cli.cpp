#include "exqmc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "exqmc/acceptance.hpp"
#include "exqmc/discrepancy.hpp"
#include "exqmc/errors.hpp"
#include "exqmc/generators.hpp"
#include "exqmc/levin_halton.hpp"
#include "exqmc/levin_net.hpp"
#include "exqmc/netcheck.hpp"
#include "exqmc/report.hpp"

namespace exqmc {

namespace {

struct Options {
  std::string command;
  std::string construction = "hammersley";
  unsigned m = 4;
  unsigned b = 2;
  unsigned s = 2;
  unsigned t = 0;
  std::string bases = "2,3";
  std::uint64_t start = 0;
  std::uint64_t count = 16;
  bool shift = false;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string output;
  std::uint64_t cap = kDefaultWindowCap;
  std::string mode = "theorem3";
  unsigned samples = 0;
  bool oracle = false;
  std::uint64_t oracle_cap = kDefaultOracleCap;
  std::string corner;
  unsigned squares = 8;
  std::string c2 = "1/10";
  std::string trajectory;
  unsigned alpha = 2;
  std::string beta = "16";
  std::string delta;
};

// Thrown for configurations that parse but make no sense together.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Json config_json(const Options& o) {
  return Json{{"command", o.command},   {"construction", o.construction},
              {"m", o.m},               {"b", o.b},
              {"s", o.s},               {"t", o.t},
              {"bases", o.bases},       {"start", o.start},
              {"count", o.count},       {"shift", o.shift},
              {"seed", o.seed},         {"format", o.format},
              {"output", o.output},     {"cap", o.cap},
              {"mode", o.mode},         {"samples", o.samples},
              {"oracle", o.oracle},     {"oracle_cap", o.oracle_cap},
              {"corner", o.corner},
              {"squares", o.squares},   {"c2", o.c2},
              {"trajectory", o.trajectory}, {"alpha", o.alpha},
              {"beta", o.beta},         {"delta", o.delta}};
}

std::vector<unsigned> parse_bases(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw UsageError("bad base list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty base list");
  return out;
}

Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError("bad rational for " + what + ": '" + text + "'");
  }
}

std::vector<Rational> parse_corner(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item, "--corner"));
  return out;
}

void put(Json& values, const std::string& key, const Rational& v) {
  values[key] = v.str();
  values["decimal"][key] = v.decimal(12);
}

std::string digit_string(const BAdicNumber& x) {
  std::string s;
  for (Digit d : x.digits()) s += std::to_string(d);
  return s;
}

std::mt19937_64 make_rng(const Options& o) { return std::mt19937_64(o.seed); }

PointSet build_points(const Options& o) {
  PointSet points = [&] {
    if (o.construction == "hammersley") return hammersley_net(o.m, o.b);
    if (o.construction == "vdc") return van_der_corput_net(o.m, o.b);
    if (o.construction == "copies") return copies_fixture(o.m, o.b, o.s);
    if (o.construction == "halton") {
      const HaltonSpec spec(parse_bases(o.bases));
      std::size_t precision = 1;
      const std::uint64_t last = o.start + std::max<std::uint64_t>(o.count, 1) - 1;
      for (unsigned b : spec.bases()) precision = std::max(precision, digit_count(last, b));
      return halton_points(o.start, o.count, spec, precision);
    }
    throw UsageError("unknown construction '" + o.construction + "'");
  }();
  if (o.shift) {
    auto base = points.common_base();
    if (!base) throw UsageError("--shift needs a construction with a single base");
    auto rng = make_rng(o);
    std::vector<BAdicNumber> coords;
    for (std::size_t j = 0; j < points.dimension(); ++j) {
      std::vector<Digit> digits(points.precision());
      for (auto& d : digits) d = static_cast<Digit>(rng() % *base);
      coords.emplace_back(*base, std::move(digits));
    }
    points = digital_shift_set(points, BAdicPoint(std::move(coords)));
  }
  return points;
}

struct Outcome {
  Report report;
  std::string csv;  // used when --format csv
};

Outcome cmd_generate(const Options& o) {
  const PointSet points = build_points(o);
  Outcome out;
  std::ostringstream csv;
  csv << "n";
  for (std::size_t j = 1; j <= points.dimension(); ++j) csv << ",x" << j;
  for (std::size_t j = 1; j <= points.dimension(); ++j) csv << ",digits" << j;
  csv << "\n";
  Json list = Json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    Json coords = Json::array();
    Json digits = Json::array();
    csv << i;
    for (const auto& c : points[i].coords()) {
      csv << ',' << to_rational(c).str();
      coords.push_back(to_rational(c).str());
      digits.push_back(digit_string(c));
    }
    for (const auto& c : points[i].coords()) csv << ',' << digit_string(c);
    csv << "\n";
    list.push_back(Json{{"coords", coords}, {"digits", digits}});
  }
  out.report.values["bases"] = points.bases();
  out.report.values["precision"] = points.precision();
  out.report.values["size"] = points.size();
  out.report.values["points"] = std::move(list);
  out.csv = csv.str();
  return out;
}

Outcome cmd_check_net(const Options& o) {
  const PointSet points = build_points(o);
  auto base = points.common_base();
  if (!base) throw UsageError("check-net needs a single base");
  Outcome out;
  auto& v = out.report.values;
  const NetVerdict verdict =
      is_net(points, o.t, o.m, static_cast<unsigned>(points.dimension()), *base);
  v["is_net"] = verdict.is_net;
  if (verdict.witness) {
    v["witness"] = {{"box", verdict.witness->box.str()}, {"count", verdict.witness->count}};
  }
  put(v, "min_valuation", min_pairwise_valuation(points));
  const auto level = admissibility_level(points, o.m);
  v["d"] = level ? Json(*level) : Json(nullptr);
  out.report.check("is_net", verdict.is_net,
                   "(" + std::to_string(o.t) + "," + std::to_string(o.m) + "," +
                       std::to_string(points.dimension()) + ")-net in base " +
                       std::to_string(*base));
  return out;
}

Outcome cmd_discrepancy(const Options& o) {
  const PointSet points = build_points(o);
  Outcome out;
  auto& v = out.report.values;
  v["size"] = points.size();
  if (!o.corner.empty()) {
    const auto corner = parse_corner(o.corner);
    if (corner.size() != points.dimension()) throw UsageError("--corner has wrong dimension");
    const DiscrepancyValue d = local_discrepancy(points, AnchoredBox{corner});
    put(v, "local_raw", d.raw);
    put(v, "local_normalized", d.normalized);
  }
  std::optional<StarDiscrepancy> exact;
  if (points.dimension() == 2) {
    exact = star_discrepancy_exact(points);
    put(v, "star", exact->value);
    Json corner = Json::array();
    for (const auto& c : exact->argmax_corner) corner.push_back(c.str());
    v["argmax_corner"] = corner;
    v["closed_side"] = exact->closed_side;
  }
  if (o.oracle || !exact) {
    const StarDiscrepancy oracle = star_discrepancy_oracle(points, o.oracle_cap);
    put(v, "star_oracle", oracle.value);
    if (exact) out.report.check("exact_equals_oracle", exact->value == oracle.value);
  }
  return out;
}

std::optional<Rational> parse_delta(const Options& o) {
  if (o.delta.empty() || o.delta == "inf") return std::nullopt;
  return parse_rational(o.delta, "--delta");
}

Outcome cmd_levin_net(const Options& o) {
  Outcome out;
  auto& v = out.report.values;
  auto& r = out.report;
  if (o.mode == "theorem3") {
    const GammaSpec gamma = gamma_theorem3(o.m);
    const PointSet points = digital_shift_set(hammersley_net(o.m), gamma.point());
    const DeltaDecomposition d = delta_decomposition(points, gamma);
    const Rational bound =
        -Rational(static_cast<long long>(o.m / 4)) * Rational(BigInt(1), big_pow(2, o.m + 2));
    put(v, "delta1", d.delta1);
    put(v, "delta2", d.delta2);
    put(v, "delta3", d.delta3);
    put(v, "sum", d.sum);
    put(v, "direct", d.direct);
    put(v, "bound", bound);
    v["a2_size"] = d.a2_size;
    v["a4_size"] = d.a4_size;
    v["bound_ok"] = d.direct <= bound;
    r.check("delta1_zero", d.delta1.is_zero());
    r.check("a2_empty", d.a2_size == 0);
    r.check("a4_size", d.a4_size == o.m / 4);
    r.check("sum_equals_direct", d.sum == d.direct);
    r.check("bound_ok", d.direct <= bound);
  } else if (o.mode == "theorem4") {
    const unsigned samples = o.samples == 0 ? 1000 : o.samples;
    const unsigned s = 2;
    const PointSet net = hammersley_net(o.m);
    const LevinNetParams params = theorem4_params(s);
    auto rng = make_rng(o);
    std::size_t distance_ok = 0;
    std::size_t conditions_ok = 0;
    std::size_t lemma_ok = 0;
    for (unsigned i = 0; i < samples; ++i) {
      std::vector<Rational> xr;
      std::vector<BAdicNumber> coords;
      for (unsigned j = 0; j < s; ++j) {
        xr.emplace_back(BigInt(rng() >> 32), BigInt(1) << 32);
        coords.push_back(BAdicNumber::from_rational(xr.back(), 2, 32));
      }
      const GammaSpec gamma = nearest_gamma(BAdicPoint(coords), o.m, s, 2);
      distance_ok += within_gamma_radius(xr, gamma.point().to_rationals(), o.m, 2) ? 1 : 0;
      conditions_ok += gamma_conditions(gamma).ok() ? 1 : 0;
      lemma_ok += lemma31_check(digital_shift_set(net, gamma.point()), gamma, params).ok() ? 1 : 0;
    }
    v["samples"] = samples;
    v["distance_ok"] = distance_ok;
    v["conditions_ok"] = conditions_ok;
    v["bound_ok"] = lemma_ok;
    put(v, "beta", params.beta);
    r.check("distance", distance_ok == samples);
    r.check("gamma_conditions", conditions_ok == samples);
    r.check("lemma31_bound", lemma_ok == samples);
  } else if (o.mode == "lemma31") {
    const GammaSpec gamma = gamma_theorem3(o.m);
    const PointSet points = digital_shift_set(hammersley_net(o.m), gamma.point());
    LevinNetParams params;
    params.alpha = o.alpha;
    params.beta = parse_rational(o.beta, "--beta");
    params.delta = parse_delta(o);
    const Lemma31Report rep = lemma31_check(points, gamma, params);
    v["preconditions_met"] = rep.preconditions_met;
    v["failures"] = rep.failures;
    v["a2_size"] = rep.a2_size;
    v["a4_size"] = rep.a4_size;
    put(v, "bracket", rep.bracket);
    put(v, "bound", rep.bound);
    put(v, "normalized", rep.normalized);
    v["bound_ok"] = rep.bound_holds;
    r.check("preconditions", rep.preconditions_met);
    r.check("bound_ok", rep.bound_holds);
  } else {
    throw UsageError("unknown --mode '" + o.mode + "'");
  }
  return out;
}

HaltonFrame frame_of(const Options& o) { return tau_orders(HaltonSpec(parse_bases(o.bases))); }

Outcome cmd_alpha(const Options& o) {
  const HaltonFrame frame = frame_of(o);
  const LevinBox box = base_box(frame, o.m);
  Outcome out;
  auto& v = out.report.values;
  v["tau"] = frame.tau;
  v["y_tilde"] = window_anchor(frame, box).y_tilde.str();
  v["period"] = frame.modulus(o.m).str();
  const Rational closed = alpha_closed(frame, box);
  put(v, "closed", closed);
  if (o.oracle) {
    const Rational brute = alpha_bruteforce(frame, box, std::nullopt, o.cap);
    put(v, "brute", brute);
    v["equal"] = closed == brute;
    out.report.check("closed_equals_brute", closed == brute);
  }
  if (o.format == "csv" || !o.trajectory.empty()) {
    const WindowTrace trace = window_trace(frame, box, to_u64(window_anchor(frame, box).y_tilde),
                                           to_u64(frame.modulus(o.m)), o.cap);
    out.csv = trajectory_csv(trace);
  }
  return out;
}

Outcome cmd_theorem2(const Options& o) {
  const HaltonFrame frame = frame_of(o);
  const LevinBox box = base_box(frame, o.m);
  const Theorem2Result t = theorem2_search(frame, box, o.cap);
  Outcome out;
  auto& v = out.report.values;
  v["y_tilde"] = t.y_tilde;
  v["period"] = t.period;
  v["n_star"] = t.n_star;
  v["n_m"] = t.n_m;
  put(v, "alpha", t.alpha);
  put(v, "delta_star", t.delta_star);
  put(v, "mean_abs", t.mean_abs);
  put(v, "head_delta", t.head_delta);
  put(v, "full_delta", t.full_delta);
  out.report.check("averaging", t.averaging_ok, "|Delta(N*)| >= |alpha_m|");
  out.report.check("split", t.split_ok, "max(|head|, |full|) >= |alpha_m| / 2");
  out.report.check("n_m_bound", t.n_m_bound_ok, "N_m <= B_tau(m+1) + B_tau m");
  if (o.format == "csv" || !o.trajectory.empty()) {
    out.csv = trajectory_csv(window_trace(frame, box, t.y_tilde, t.period, o.cap));
  }
  return out;
}

Outcome cmd_theorem5(const Options& o) {
  const HaltonFrame frame = frame_of(o);
  const Rational c2 = parse_rational(o.c2, "--c2");
  if (c2 <= Rational(0)) throw UsageError("--c2 must be positive");
  const Theorem5Report rep = theorem5_search(frame, o.m, o.squares, c2, o.cap);
  Outcome out;
  auto& v = out.report.values;
  v["period"] = rep.period;
  Json cells = Json::array();
  for (const auto& c : rep.cells) {
    Json cell{{"lower", {c.lower[0].str(), c.lower[1].str()}},
              {"upper", {c.upper[0].str(), c.upper[1].str()}}};
    if (c.member) {
      const auto y = c.member->corner();
      cell["y"] = {y[0].str(), y[1].str()};
      cell["window_start"] = c.window_start;
      cell["alpha"] = rational_json(c.alpha);
      cell["alpha_ok"] = c.alpha_ok;
      cell["good_count"] = c.good_count;
      cell["good_at_n0"] = c.good_at_n0;
    }
    cells.push_back(std::move(cell));
  }
  v["cells"] = std::move(cells);
  v["failures"] = rep.failures;
  v["total_good"] = rep.total_good;
  v["n0"] = rep.n0;
  v["multiplicity"] = rep.multiplicity;
  v["required_multiplicity"] = rep.required_multiplicity;
  put(v, "lambda", rep.lambda);
  put(v, "kappa", rep.kappa);

  const unsigned samples = o.samples == 0 ? 100 : o.samples;
  auto rng = make_rng(o);
  std::size_t distance_ok = 0;
  for (unsigned i = 0; i < samples; ++i) {
    const std::vector<Rational> x{Rational(BigInt(rng() >> 32), BigInt(1) << 32),
                                  Rational(BigInt(rng() >> 32), BigInt(1) << 32)};
    distance_ok += within_upsilon_radius(x, upsilon_nearest(frame, x, o.m)) ? 1 : 0;
  }
  v["distance_samples"] = samples;
  v["distance_ok"] = distance_ok;
  out.report.check("cells_meet_c2", rep.failures.empty());
  out.report.check("pigeonhole", rep.multiplicity >= rep.required_multiplicity);
  out.report.check("upsilon_distance", distance_ok == samples);
  return out;
}

Outcome cmd_reproduce_all(const Options& o, std::ostream& err) {
  Outcome out;
  Json list = Json::array();
  for (const auto& r : run_acceptance(o.seed, err)) {
    list.push_back(Json{{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass()},
                        {"seconds", r.seconds},
                        {"limit_seconds", r.limit_seconds},
                        {"detail", r.detail}});
    out.report.check("criterion " + std::to_string(r.id), r.pass(), r.name);
  }
  out.report.values["criteria"] = std::move(list);
  return out;
}

std::uint64_t default_cap() {
  if (const char* env = std::getenv(kCapEnv)) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(kCapEnv) + " must be a positive integer, got '" + env + "'");
  }
  return kDefaultWindowCap;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    o.cap = default_cap();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Exact-arithmetic discrepancy toolkit for nets and the Halton sequence", "exqmc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", o.output, "report path (default stdout)");
    sub->add_option("--seed", o.seed, "seed for random shifts and probe points");
    sub->add_option("--cap", o.cap, "brute-force cap (default from EXQMC_CAP or 12^6)")
        ->check(CLI::PositiveNumber);
  };
  auto point_options = [&](CLI::App* sub) {
    sub->add_option("--construction", o.construction, "hammersley | vdc | copies | halton")
        ->check(CLI::IsMember({"hammersley", "vdc", "copies", "halton"}));
    sub->add_option("--m", o.m, "net exponent m")->check(CLI::Range(0U, 30U));
    sub->add_option("--b", o.b, "base")->check(CLI::Range(2U, 1U << 16));
    sub->add_option("--s", o.s, "dimension of the copies fixture");
    sub->add_option("--bases", o.bases, "comma-separated Halton bases");
    sub->add_option("--start", o.start, "first Halton index");
    sub->add_option("--count", o.count, "number of Halton points");
    sub->add_flag("--shift", o.shift, "apply a random digital shift drawn from --seed");
  };

  auto* gen = app.add_subcommand("generate", "export a point set (alias: export)");
  gen->alias("export");
  point_options(gen);
  common(gen);

  auto* net = app.add_subcommand("check-net", "(t,m,s)-net and admissibility check");
  point_options(net);
  net->add_option("--t", o.t, "quality parameter");
  common(net);

  auto* disc = app.add_subcommand("discrepancy", "exact star and local discrepancy");
  point_options(disc);
  disc->add_flag("--oracle", o.oracle, "cross-check against the brute-force oracle");
  disc->add_option("--oracle-cap", o.oracle_cap, "largest set the oracle accepts")
      ->check(CLI::PositiveNumber);
  disc->add_option("--corner", o.corner, "local discrepancy corner, e.g. 1/2,3/4");
  common(disc);

  auto* lnet = app.add_subcommand("levin-net", "corner bounds for shifted nets");
  lnet->add_option("--mode", o.mode, "theorem3 | theorem4 | lemma31")
      ->check(CLI::IsMember({"theorem3", "theorem4", "lemma31"}));
  lnet->add_option("--m", o.m, "net exponent")->check(CLI::Range(1U, 24U));
  lnet->add_option("--samples", o.samples, "random points for theorem4 mode");
  lnet->add_option("--alpha", o.alpha, "alpha for lemma31 mode");
  lnet->add_option("--beta", o.beta, "beta for lemma31 mode (p/q)");
  lnet->add_option("--delta", o.delta, "delta for lemma31 mode (p/q or inf)");
  common(lnet);

  auto* alpha = app.add_subcommand("alpha", "window average alpha_m, closed form and brute force");
  alpha->add_option("--bases", o.bases, "comma-separated coprime bases");
  alpha->add_option("--m", o.m, "number of addends")->check(CLI::Range(0U, 40U));
  alpha->add_flag("--oracle", o.oracle, "also compute the brute-force average");
  alpha->add_option("--trajectory", o.trajectory, "write the (N, Delta) CSV here");
  common(alpha);

  auto* t2 = app.add_subcommand("theorem2", "search for a window length with large |Delta|");
  t2->add_option("--bases", o.bases, "comma-separated coprime bases");
  t2->add_option("--m", o.m, "number of addends")->check(CLI::Range(1U, 40U));
  t2->add_option("--trajectory", o.trajectory, "write the (N, Delta) CSV here");
  common(t2);

  auto* t5 = app.add_subcommand("theorem5", "pigeonhole over Upsilon members, bases 2,3");
  t5->add_option("--bases", o.bases, "must be 2,3");
  t5->add_option("--m", o.m, "number of addends")->check(CLI::Range(2U, 40U));
  t5->add_option("--squares", o.squares, "number of cells")->check(CLI::PositiveNumber);
  t5->add_option("--c2", o.c2, "threshold constant c2 (p/q)");
  t5->add_option("--samples", o.samples, "random points for the distance check");
  common(t5);

  auto* all = app.add_subcommand("reproduce-all", "run every acceptance criterion");
  common(all);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  o.command = app.get_subcommands().front()->get_name();

  const bool csv_capable = o.command == "generate" || o.command == "alpha" || o.command == "theorem2";
  if (o.format == "csv" && !csv_capable) {
    err << "error: --format csv is available for generate, alpha and theorem2 only\n";
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome result;
  try {
    if (o.command == "generate") result = cmd_generate(o);
    else if (o.command == "check-net") result = cmd_check_net(o);
    else if (o.command == "discrepancy") result = cmd_discrepancy(o);
    else if (o.command == "levin-net") result = cmd_levin_net(o);
    else if (o.command == "alpha") result = cmd_alpha(o);
    else if (o.command == "theorem2") result = cmd_theorem2(o);
    else if (o.command == "theorem5") result = cmd_theorem5(o);
    else result = cmd_reproduce_all(o, err);
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  result.report.command = o.command;
  result.report.config = config_json(o);
  result.report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  try {
    const std::string body =
        o.format == "csv" ? result.csv : result.report.to_json().dump(2) + "\n";
    if (o.output.empty()) {
      out << body;
    } else {
      write_atomic(o.output, body);
    }
    if (!o.trajectory.empty()) write_atomic(o.trajectory, result.csv);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  for (const auto& v : result.report.verdicts) {
    if (!v.pass) err << "assertion failed: " << v.name << (v.detail.empty() ? "" : ": " + v.detail) << "\n";
  }
  return result.report.all_pass() ? kExitPass : kExitAssertion;
}

}  // namespace exqmc
