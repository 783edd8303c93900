#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bssym/algebra.hpp"
#include "bssym/fd_solver.hpp"
#include "bssym/serialize.hpp"
#include "bssym/transforms.hpp"

namespace bssym::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string r = "1/20";
  std::string sigma2 = "1/25";
  double strike = 100.0;
  double maturity = 1.0;
  std::string kind = "call";
  std::string grid_t = "0:0.8";
  std::string grid_x = "ln(0.5):ln(200)";
  std::size_t nt = 801;
  std::size_t nx = 600;
  std::vector<std::string> pipeline;
  double tol = 5e-4;
  double group_tol = 1e-10;
  int stencil = 4;
  std::string format = "json";
  std::string out;
  std::string inject_fault;
};

// Config for one run, after validation.
struct Run {
  Options opt;
  ModelContext ctx;
  OptionSpec option;
  Grid log_grid;
  Grid price_grid;
  StencilOrder stencil;
};

// "0.8", "-1e-3" or "ln(200)".
double parse_number(const std::string& text) {
  std::string s = text;
  bool log = false;
  if (s.size() > 4 && s.rfind("ln(", 0) == 0 && s.back() == ')') {
    s = s.substr(3, s.size() - 4);
    log = true;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("not a number: '" + text + "'");
  if (log) {
    if (v <= 0.0) throw UsageError("ln of a non-positive number: '" + text + "'");
    v = std::log(v);
  }
  return v;
}

std::pair<double, double> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("expected lo:hi, got '" + text + "'");
  double lo = parse_number(text.substr(0, colon)), hi = parse_number(text.substr(colon + 1));
  if (!(lo < hi)) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

Rational parse_rational(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

std::vector<FiniteTransform> parse_pipeline(const std::vector<std::string>& items) {
  std::vector<FiniteTransform> out;
  for (const auto& item : items) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("pipeline stage '" + item + "' is not i:kappa");
    double i = parse_number(item.substr(0, colon));
    if (i != 3 && i != 4 && i != 5 && i != 6)
      throw UsageError("pipeline stage '" + item + "': closed-form flows exist for generators 3 to 6 only");
    out.push_back({static_cast<int>(i), parse_number(item.substr(colon + 1)), Frame::price});
  }
  return out;
}

Run validate(const Options& opt) {
  Rational r = parse_rational("r", opt.r), s2 = parse_rational("sigma2", opt.sigma2);
  ModelContext ctx;
  try {
    ctx = make_context(r, s2);
    auto option = make_option(opt.strike, opt.maturity, option_kind_from_name(opt.kind));
    auto [t_lo, t_hi] = parse_range(opt.grid_t);
    auto [x_lo, x_hi] = parse_range(opt.grid_x);
    if (t_lo < 0.0 || t_hi > opt.maturity) throw UsageError("--grid-t must lie within [0, maturity]");
    auto log_grid = Grid::uniform(t_lo, t_hi, opt.nt, x_lo, x_hi, opt.nx);
    std::vector<double> S;
    for (double x : log_grid.space_values()) S.push_back(std::exp(x));
    Grid price_grid(log_grid.t_values(), S);
    if (opt.stencil != 2 && opt.stencil != 4) throw UsageError("--stencil must be 2 or 4");
    if (opt.format != "json" && opt.format != "csv") throw UsageError("--format must be json or csv");
    return Run{opt, ctx, option, log_grid, price_grid,
               opt.stencil == 2 ? StencilOrder::second : StencilOrder::fourth};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Json model_json(const ModelContext& ctx) {
  return {{"r", to_json(ctx.r)}, {"sigma2", to_json(ctx.sigma2)}, {"rtilde", to_json(ctx.rtilde)},
          {"stilde", to_json(ctx.stilde)}};
}

Json option_json(const OptionSpec& o) {
  return {{"strike", o.strike}, {"maturity", o.maturity}, {"kind", to_string(o.kind)}};
}

Json grid_json(const Grid& g) {
  return {{"t", {g.t_values().front(), g.t_values().back()}},
          {"space", {g.space_values().front(), g.space_values().back()}},
          {"nt", g.nt()},
          {"ns", g.ns()}};
}

Json header(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

// Shortest text that reads back as the same double.
std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Output sink: stdout or the --out file.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit_json(Sink& sink, const Json& j) { sink.stream() << j.dump(2) << "\n"; }

// --- verify -----------------------------------------------------------------

int cmd_verify(const Run& run, std::ostream& out, std::ostream& err) {
  if (!run.opt.inject_fault.empty() && run.opt.inject_fault != "n5-h-zero")
    throw UsageError("unknown fault '" + run.opt.inject_fault + "' (known: n5-h-zero)");
  std::vector<std::pair<std::string, Isovector>> fields;
  for (int i = 1; i <= 6; ++i) {
    auto n = basis_isovector(i, run.ctx);
    if (i == 5 && run.opt.inject_fault == "n5-h-zero") n[Var::phi] = gh_of(n).g;
    fields.emplace_back("N" + std::to_string(i), n);
  }
  fields.emplace_back("Nu[exp(x)]", solution_isovector(SolutionSpec{{mode_for_rate(Rational(1), run.ctx)}}));

  Json entries = Json::array();
  std::vector<std::vector<std::string>> rows;
  int passed = 0;
  for (const auto& [name, n] : fields) {
    auto rep = verify_isovector(n, run.ctx);
    passed += rep.passed ? 1 : 0;
    if (!rep.passed)
      err << name << ": fail, remainder " << rep.beta_certificate.remainder.to_string() << ", alpha residual "
          << rep.alpha_residual.to_string() << "\n";
    entries.push_back({{"name", name}, {"isovector", to_json(n)}, {"report", to_json(rep)}});
    rows.push_back({name, rep.lambda.to_string(), rep.alpha_check ? "true" : "false",
                    rep.beta_certificate.remainder.to_string(), rep.passed ? "pass" : "fail"});
  }
  const bool ok = passed == static_cast<int>(fields.size());
  Sink sink(run.opt.out, out);
  if (run.opt.format == "csv") {
    sink.stream() << "name,lambda,alpha_check,remainder,verdict\n";
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < row.size(); ++k) sink.stream() << (k ? "," : "") << csv_field(row[k]);
      sink.stream() << "\n";
    }
  } else {
    Json j = header("verify");
    j["model"] = model_json(run.ctx);
    if (!run.opt.inject_fault.empty()) j["injected_fault"] = run.opt.inject_fault;
    j["isovectors"] = entries;
    j["passed"] = passed;
    j["total"] = fields.size();
    j["verdict"] = ok ? "pass" : "fail";
    emit_json(sink, j);
  }
  return ok ? kExitOk : kExitFailed;
}

// --- brackets ---------------------------------------------------------------

int cmd_brackets(const Run& run, std::ostream& out, std::ostream&) {
  auto table = structure_constants(run.ctx);
  Sink sink(run.opt.out, out);
  if (run.opt.format == "csv") {
    sink.stream() << "kind,i,j,value\n";
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        sink.stream() << "bracket," << i + 1 << "," << j + 1 << "," << csv_field(format_combination(table.entries[i][j]))
                      << "\n";
    for (const auto& c : table.ideal_checks)
      sink.stream() << "check,,," << csv_field(c.description + ": " + (c.passed ? "pass" : "fail")) << "\n";
  } else {
    Json j = header("brackets");
    j["model"] = model_json(run.ctx);
    j.update(to_json(table));
    j["verdict"] = table.all_checks_pass() ? "pass" : "fail";
    emit_json(sink, j);
  }
  return table.all_checks_pass() ? kExitOk : kExitFailed;
}

// --- transform --------------------------------------------------------------

std::string stage_name(const FiniteTransform& tr) { return std::to_string(tr.generator) + ":" + num(tr.kappa); }

// Worst |exp(-k N) exp(k N) C - C| / max(1, |C|) over a fixed subsample of
// grid nodes where both pullbacks are defined.
double inverse_deviation(const FiniteTransform& tr, const Field& c, const Run& run) {
  auto round_trip = compose({tr, {tr.generator, -tr.kappa, tr.frame}}).apply(c, run.ctx);
  const auto& t = run.price_grid.t_values();
  const auto& s = run.price_grid.space_values();
  double worst = 0.0;
  for (std::size_t a = 0; a < 10; ++a)
    for (std::size_t b = 0; b < 10; ++b) {
      double ti = t[(a * (t.size() - 1)) / 9], si = s[(b * (s.size() - 1)) / 9];
      if (!round_trip.contains(ti, si)) continue;
      double ref = c(ti, si);
      worst = std::max(worst, std::abs(round_trip(ti, si) - ref) / std::max(1.0, std::abs(ref)));
    }
  return worst;
}

int cmd_transform(const Run& run, std::ostream& out, std::ostream& err) {
  auto stages = parse_pipeline(run.opt.pipeline);
  if (stages.empty()) throw UsageError("transform needs a nonempty --pipeline");
  TransformPipeline pipeline(stages);
  auto c = closed_form_field(run.option, run.ctx, Frame::price);

  Json reports = Json::array();
  bool ok = true;
  Sink sink(run.opt.out, out);
  try {
    for (std::size_t k = 0; k < stages.size(); ++k) {
      auto field = pipeline.apply(c, run.ctx, k + 1);
      auto cert = certify_solution(field, run.price_grid, run.ctx, run.opt.tol, run.stencil);
      double dev = inverse_deviation(stages[k], c, run);
      bool group_ok = dev <= run.opt.group_tol;
      ok = ok && cert.passed && group_ok;
      Json rep = to_json(cert);
      rep["stage"] = k + 1;
      rep["transform"] = {{"generator", stages[k].generator}, {"kappa", stages[k].kappa}};
      rep["group_law"] = {{"inverse_deviation", dev}, {"tolerance", run.opt.group_tol}, {"verdict", group_ok ? "pass" : "fail"}};
      reports.push_back(rep);
      err << "stage " << k + 1 << " (" << stage_name(stages[k]) << "): " << (cert.passed && group_ok ? "pass" : "fail")
          << ", max relative residual " << num(cert.residual.max_relative_residual) << "\n";
    }
    if (run.opt.format == "csv") write_csv(sink.stream(), sample(pipeline.apply(c, run.ctx), run.price_grid));
  } catch (const PullbackError& e) {
    const auto& clipped = e.clipped();
    err << "pullback outside the domain: " << e.what() << "\n";
    const std::size_t shown = std::min<std::size_t>(clipped.size(), 20);
    for (std::size_t k = 0; k < shown; ++k) err << "  clipped t=" << num(clipped[k].first) << " S=" << num(clipped[k].second) << "\n";
    if (clipped.size() > shown) err << "  ... " << clipped.size() - shown << " more\n";
    if (run.opt.format == "json") {
      Json j = header("transform");
      j["stages"] = reports;
      Json listing = Json::array();
      for (std::size_t k = 0; k < shown; ++k) listing.push_back({clipped[k].first, clipped[k].second});
      j["error"] = {{"kind", "pullback"}, {"message", e.what()}, {"clipped_count", clipped.size()}, {"clipped", listing}};
      j["verdict"] = "fail";
      emit_json(sink, j);
    }
    return kExitFailed;
  }
  if (run.opt.format == "json") {
    Json j = header("transform");
    j["model"] = model_json(run.ctx);
    j["option"] = option_json(run.option);
    j["grid"] = grid_json(run.price_grid);
    j["stages"] = reports;
    j["verdict"] = ok ? "pass" : "fail";
    emit_json(sink, j);
  }
  return ok ? kExitOk : kExitFailed;
}

// --- price ------------------------------------------------------------------

struct Level {
  double dx;
  std::size_t steps;
  double fd;
  double error;
};

std::vector<Level> convergence_study(const Run& run) {
  const double lk = std::log(run.option.strike);
  std::vector<Level> out;
  for (auto [dx, steps] : {std::pair{0.02, 50}, std::pair{0.01, 100}, std::pair{0.005, 200}}) {
    auto grid = Grid::uniform(0.0, run.option.maturity, static_cast<std::size_t>(steps) + 1, lk - 3.0, lk + 3.0,
                              static_cast<std::size_t>(std::lround(6.0 / dx)) + 1);
    double v = value_at(fd_solve(run.option, run.ctx, grid), 0, lk);
    out.push_back({dx, static_cast<std::size_t>(steps), v, v - bs_price(run.option, run.ctx, 0.0, run.option.strike)});
  }
  return out;
}

int cmd_price(const Run& run, std::ostream& out, std::ostream&) {
  const double K = run.option.strike, T = run.option.maturity;
  std::vector<double> times{run.log_grid.t_values().front(), run.log_grid.t_values().back()};
  if (times.back() < T) times.push_back(T);
  Json table = Json::array();
  std::vector<std::array<double, 3>> rows;
  bool terminal_ok = true;
  for (double t : times)
    for (double m : {0.8, 0.9, 1.0, 1.1, 1.2}) {
      double S = m * K, v = bs_price(run.option, run.ctx, t, S);
      if (t == T) terminal_ok = terminal_ok && v == payoff(run.option, S);
      table.push_back({{"t", t}, {"S", S}, {"value", v}});
      rows.push_back({t, S, v});
    }
  auto levels = convergence_study(run);
  std::vector<double> ratios;
  for (std::size_t k = 1; k < levels.size(); ++k) ratios.push_back(levels[k - 1].error / levels[k].error);
  bool conv_ok = std::all_of(ratios.begin(), ratios.end(), [](double q) { return q >= 3.5 && q <= 4.5; });
  const bool ok = terminal_ok && conv_ok;

  Sink sink(run.opt.out, out);
  if (run.opt.format == "csv") {
    sink.stream() << "section,t,S,dx,steps,value,reference,error\n";
    for (const auto& [t, S, v] : rows) sink.stream() << "closed_form," << num(t) << "," << num(S) << ",,," << num(v) << ",,\n";
    double ref = bs_price(run.option, run.ctx, 0.0, K);
    for (const auto& l : levels)
      sink.stream() << "fd,0," << num(K) << "," << num(l.dx) << "," << l.steps << "," << num(l.fd) << "," << num(ref)
                    << "," << num(l.error) << "\n";
  } else {
    Json j = header("price");
    j["model"] = model_json(run.ctx);
    j["option"] = option_json(run.option);
    j["closed_form"] = table;
    j["terminal_row_matches_payoff"] = terminal_ok;
    Json conv = Json::array();
    for (const auto& l : levels) conv.push_back({{"dx", l.dx}, {"steps", l.steps}, {"fd_value", l.fd}, {"error", l.error}});
    j["convergence"] = {{"t", 0.0}, {"S", K}, {"reference", bs_price(run.option, run.ctx, 0.0, K)}, {"levels", conv},
                        {"ratios", ratios}, {"accepted_ratio", {3.5, 4.5}}};
    j["verdict"] = ok ? "pass" : "fail";
    emit_json(sink, j);
  }
  return ok ? kExitOk : kExitFailed;
}

// --- residual ---------------------------------------------------------------

// FD solution on the grid's x nodes, marched from maturity with the grid's
// time step, restricted to the grid's time rows.
GridSolution fd_on_grid(const Run& run) {
  const auto& t = run.log_grid.t_values();
  const double dt = run.log_grid.dt(), T = run.option.maturity;
  const auto steps = static_cast<std::size_t>(std::lround((T - t.front()) / dt));
  Grid full = Grid::uniform(t.front(), T, std::max<std::size_t>(steps, 2) + 1, run.log_grid.space_values().front(),
                            run.log_grid.space_values().back(), run.log_grid.ns());
  auto sol = fd_solve(run.option, run.ctx, full);
  std::vector<double> keep_t;
  std::vector<double> values;
  for (std::size_t i = 0; i < full.nt(); ++i) {
    if (full.t_values()[i] > t.back() + 1e-9 * std::max(1.0, T)) break;
    keep_t.push_back(full.t_values()[i]);
    for (std::size_t j = 0; j < full.ns(); ++j) values.push_back(sol.at(i, j));
  }
  return GridSolution(Grid(keep_t, full.space_values()), std::move(values), Frame::log);
}

int cmd_residual(const Run& run, std::ostream& out, std::ostream&) {
  auto phi = sample(closed_form_field(run.option, run.ctx, Frame::log), run.log_grid);
  auto c = sample(closed_form_field(run.option, run.ctx, Frame::price), run.price_grid);
  auto fd = fd_on_grid(run);

  struct Entry {
    std::string source, frame;
    ResidualReport rep;
  };
  std::vector<Entry> entries{{"closed_form", "log", residual_E2(phi, run.ctx, run.stencil)},
                             {"closed_form", "price", residual_E(c, run.ctx, run.stencil)},
                             {"fd", "log", residual_E2(fd, run.ctx, run.stencil)}};
  double fd_err = 0.0;
  for (std::size_t i = 0; i < fd.grid().nt(); ++i)
    for (std::size_t j = 0; j < fd.grid().ns(); ++j)
      fd_err = std::max(fd_err, std::abs(fd.at(i, j) - bs_price(run.option, run.ctx, fd.grid().t_values()[i],
                                                                  std::exp(fd.grid().space_values()[j]))));
  bool ok = true;
  for (const auto& e : entries) ok = ok && e.rep.max_relative_residual <= run.opt.tol;

  Sink sink(run.opt.out, out);
  if (run.opt.format == "csv") {
    sink.stream() << "source,frame,max_abs_residual,interior_norm,scale,max_relative_residual,interior_nodes,verdict\n";
    for (const auto& e : entries)
      sink.stream() << e.source << "," << e.frame << "," << num(e.rep.max_abs_residual) << "," << num(e.rep.interior_norm)
                    << "," << num(e.rep.scale) << "," << num(e.rep.max_relative_residual) << "," << e.rep.interior_nodes
                    << "," << (e.rep.max_relative_residual <= run.opt.tol ? "pass" : "fail") << "\n";
  } else {
    Json j = header("residual");
    j["model"] = model_json(run.ctx);
    j["option"] = option_json(run.option);
    j["grid"] = grid_json(run.log_grid);
    j["tolerance"] = run.opt.tol;
    Json reports = Json::array();
    for (const auto& e : entries) {
      Json r = to_json(e.rep);
      r["source"] = e.source;
      r["frame"] = e.frame;
      r["verdict"] = e.rep.max_relative_residual <= run.opt.tol ? "pass" : "fail";
      reports.push_back(r);
    }
    j["reports"] = reports;
    j["fd_max_abs_error"] = fd_err;
    j["verdict"] = ok ? "pass" : "fail";
    emit_json(sink, j);
  }
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry algebra and transforms of the Black-Scholes equation", "bssym"};
  app.set_config("--config", "", "flat key = value file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--r", opt.r, "risk-free rate, exact (p/q or decimal)")->capture_default_str();
  app.add_option("--sigma2", opt.sigma2, "variance rate, exact")->capture_default_str();
  app.add_option("--strike", opt.strike)->capture_default_str();
  app.add_option("--maturity", opt.maturity)->capture_default_str();
  app.add_option("--kind", opt.kind, "call or put")->capture_default_str();
  app.add_option("--grid-t", opt.grid_t, "lo:hi")->capture_default_str();
  app.add_option("--grid-x", opt.grid_x, "lo:hi in log-price; ln(v) allowed")->capture_default_str();
  app.add_option("--nt", opt.nt, "time nodes")->capture_default_str();
  app.add_option("--nx", opt.nx, "space nodes")->capture_default_str();
  app.add_option("--pipeline", opt.pipeline, "i:kappa,i:kappa,...")->delimiter(',');
  app.add_option("--tol", opt.tol, "max relative residual")->capture_default_str();
  app.add_option("--group-tol", opt.group_tol, "group law deviation")->capture_default_str();
  app.add_option("--stencil", opt.stencil, "2 or 4")->capture_default_str();
  app.add_option("--format", opt.format, "json or csv")->capture_default_str();
  app.add_option("--out", opt.out, "output file (default stdout)");
  app.add_option("--inject-fault", opt.inject_fault, "debug: n5-h-zero");

  auto* verify = app.add_subcommand("verify", "verify N1..N6 and a sampled N_u against the ideal");
  auto* brackets = app.add_subcommand("brackets", "structure constants and ideal checks");
  auto* transform = app.add_subcommand("transform", "apply and certify a flow pipeline on the closed-form option");
  auto* price = app.add_subcommand("price", "closed-form table and FD convergence study");
  auto* residual = app.add_subcommand("residual", "residual audits of closed-form and FD solutions");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Run run = validate(opt);
    if (verify->parsed()) return cmd_verify(run, out, err);
    if (brackets->parsed()) return cmd_brackets(run, out, err);
    if (transform->parsed()) return cmd_transform(run, out, err);
    if (price->parsed()) return cmd_price(run, out, err);
    if (residual->parsed()) return cmd_residual(run, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AlgebraError& e) {
    err << "failed: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace bssym::cli
