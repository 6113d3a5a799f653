#include "gasketpile/cli.hpp"

#include "gasketpile/group.hpp"
#include "gasketpile/io.hpp"
#include "gasketpile/markov.hpp"
#include "gasketpile/render.hpp"
#include "gasketpile/selfsim.hpp"
#include "gasketpile/spectral.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace gasketpile {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("GASKETPILE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("GASKETPILE_SEED is not an unsigned integer: ") + s);
    }
  }
  return 0;
}

std::string decimal(const Rational& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.convert_to<double>();
  return os.str();
}

struct Options {
  int level = 0;
  std::string boundary = "normal";
  bool json = false;
  std::string config;
  std::string render_path;
  std::string format = "ppm";
  int scale = 16;
  std::vector<Index> frozen;
  std::string check;
  std::string method = "recursion";
  bool all = false;
  bool h1 = false;
  std::uint64_t t = 0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  std::uint64_t cap = kCharacterCap;
  bool monte_carlo = false;
  std::string out_path;
};

class Cli {
 public:
  Cli(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  void add_level(CLI::App* app, bool boundary = true) {
    app->add_option("--level,-n", o_.level, "gasket level")->required()->check(CLI::NonNegativeNumber);
    if (boundary) app->add_option("--boundary", o_.boundary, "normal | corner_sink:<lower_left|lower_right|top>");
  }

  void add_config(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("--config,-c", o_.config, "configuration file (JSON or text), '-' for stdin");
    if (required) opt->required();
  }

  int run(int argc, const char* const* argv, std::ostream& err) {
    CLI::App app{"Abelian sandpiles on Sierpinski gasket graphs", "gasketpile"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o_.json, "machine-readable JSON output");
    o_.seed = default_seed();
    std::function<int()> action;

    auto* gasket = app.add_subcommand("gasket", "build a gasket graph");
    add_level(gasket);
    gasket->callback([&] { action = [&] { return cmd_gasket(); }; });

    auto* sandpile = app.add_subcommand("sandpile", "stabilization, identity, burning test");
    sandpile->require_subcommand(1);
    auto* stab = sandpile->add_subcommand("stabilize", "stabilize a configuration");
    add_config(stab);
    stab->add_option("--frozen", o_.frozen, "vertex indices that never fire")->delimiter(',');
    stab->callback([&] { action = [&] { return cmd_stabilize(); }; });
    auto* ident = sandpile->add_subcommand("identity", "identity element of the sandpile group");
    add_level(ident);
    add_render_flags(ident);
    ident->callback([&] { action = [&] { return cmd_identity(); }; });
    auto* burn = sandpile->add_subcommand("burn", "burning test for recurrence");
    add_config(burn);
    burn->callback([&] { action = [&] { return cmd_burn(); }; });

    auto* selfsim = app.add_subcommand("selfsim", "self-similar constructions");
    selfsim->require_subcommand(1);
    auto* sid = selfsim->add_subcommand("id", "identity from rotated copies of M_{n-1}(2,2,2)");
    add_level(sid, false);
    add_render_flags(sid);
    sid->callback([&] { action = [&] { return cmd_selfsim_id(); }; });
    auto* verify = selfsim->add_subcommand("verify", "toppling identities");
    add_level(verify, false);
    verify->add_option("--check", o_.check, "doubling | transport | junction")
        ->required()
        ->check(CLI::IsMember({"doubling", "transport", "junction"}));
    add_config(verify, false);
    verify->add_option("--seed", o_.seed, "seed for the random recurrent input of the transport check");
    verify->callback([&] { action = [&] { return cmd_verify(); }; });

    auto* group = app.add_subcommand("group", "sandpile groups");
    group->require_subcommand(1);
    auto* snf = group->add_subcommand("snf", "invariant factors of the sandpile group");
    add_level(snf);
    snf->callback([&] { action = [&] { return cmd_snf(); }; });
    auto* thm = group->add_subcommand("check-theorem", "quotient isomorphism at level n");
    add_level(thm, false);
    thm->callback([&] { action = [&] { return cmd_theorem(); }; });
    auto* tau = group->add_subcommand("tau", "spanning trees of the bare gasket");
    add_level(tau, false);
    tau->add_option("--method", o_.method, "recursion | matrix-tree | both")
        ->check(CLI::IsMember({"recursion", "matrix-tree", "both"}));
    tau->callback([&] { action = [&] { return cmd_tau(); }; });

    auto* spectral = app.add_subcommand("spectral", "characters and eigenvalues");
    spectral->require_subcommand(1);
    auto* eigs = spectral->add_subcommand("eigs", "eigenvalues of the sandpile chain");
    add_level(eigs, false);
    auto* all = eigs->add_flag("--all", o_.all, "every character (subject to --cap)");
    eigs->add_flag("--h1", o_.h1, "the embedded h_1 characters (default)")->excludes(all);
    eigs->add_option("--cap", o_.cap, "largest group order to enumerate");
    eigs->callback([&] { action = [&] { return cmd_eigs(); }; });
    auto* dist = spectral->add_subcommand("distance", "exact L2 distance to stationarity");
    add_level(dist, false);
    dist->add_option("--t", o_.t, "number of steps")->required();
    dist->add_option("--cap", o_.cap, "largest group order to enumerate");
    dist->callback([&] { action = [&] { return cmd_distance(); }; });

    auto* markov = app.add_subcommand("markov", "the sandpile Markov chain");
    markov->require_subcommand(1);
    auto* sim = markov->add_subcommand("simulate", "run the chain from the identity");
    add_level(sim, false);
    sim->add_option("--steps", o_.steps, "number of steps")->required();
    sim->add_option("--seed", o_.seed, "master seed (default $GASKETPILE_SEED or 0)");
    sim->add_option("--trials", o_.trials, "independent trajectories")->check(CLI::PositiveNumber);
    sim->callback([&] { action = [&] { return cmd_simulate(); }; });
    auto* rep = markov->add_subcommand("report", "analytic mixing-time bounds");
    add_level(rep, false);
    rep->add_flag("--monte-carlo", o_.monte_carlo, "add chi-decay estimates");
    rep->add_option("--trials", o_.trials, "trajectories per estimate")->check(CLI::PositiveNumber);
    rep->add_option("--seed", o_.seed, "master seed (default $GASKETPILE_SEED or 0)");
    rep->callback([&] { action = [&] { return cmd_report(); }; });

    auto* render_cmd = app.add_subcommand("render", "draw a configuration");
    add_config(render_cmd);
    render_cmd->add_option("--out,-o", o_.out_path, "output image path")->required();
    render_cmd->add_option("--format", o_.format, "ppm | svg")->check(CLI::IsMember({"ppm", "svg"}));
    render_cmd->add_option("--scale", o_.scale, "pixels per edge")->check(CLI::PositiveNumber);
    render_cmd->callback([&] { action = [&] { return cmd_render(); }; });

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n\n" << app.help();
      return kExitUsage;
    }
    return action();
  }

 private:
  void add_render_flags(CLI::App* app) {
    app->add_option("--render", o_.render_path, "also write a picture to this path");
    app->add_option("--format", o_.format, "ppm | svg")->check(CLI::IsMember({"ppm", "svg"}));
    app->add_option("--scale", o_.scale, "pixels per edge")->check(CLI::PositiveNumber);
  }

  void require_level_cap() const {
    if (o_.level > kCliLevelCap)
      throw UsageError("level " + std::to_string(o_.level) + " exceeds the cap of " + std::to_string(kCliLevelCap));
  }

  GasketGraph graph() const {
    require_level_cap();
    return build_gasket(o_.level, parse_boundary(o_.boundary));
  }

  Configuration load_config() const {
    if (o_.config == "-") return read_config(in_);
    std::ifstream f(o_.config);
    if (!f) throw UsageError("cannot read configuration file '" + o_.config + "'");
    return read_config(f);
  }

  static GasketGraph graph_of(const Configuration& c) {
    if (c.level > kCliLevelCap) throw UsageError("configuration level exceeds the cap");
    return build_gasket(c.level, c.boundary);
  }

  void maybe_render(const GasketGraph& g, const Configuration& c) const {
    if (o_.render_path.empty()) return;
    RenderSpec spec;
    spec.format = parse_image_format(o_.format);
    spec.scale = o_.scale;
    write_file(o_.render_path, render(g, c, spec));
  }

  void emit(const Json& j, const std::string& text) const {
    if (o_.json)
      out_ << j.dump(2) << '\n';
    else
      out_ << text << '\n';
  }

  int cmd_gasket() {
    const GasketGraph g = graph();
    std::ostringstream os;
    os << "level " << g.level() << ", " << to_string(g.boundary()) << ": " << g.size() << " non-sink vertices, "
       << g.gasket_edge_count() << " gasket edges, sink degree " << g.sink_degree();
    emit(graph_to_json(g), os.str());
    return kExitOk;
  }

  int cmd_stabilize() {
    const Configuration c = load_config();
    const GasketGraph g = graph_of(c);
    for (Index v : o_.frozen)
      if (v < 0 || v >= g.size()) throw UsageError("frozen vertex " + std::to_string(v) + " out of range");
    const auto s = stabilize(g, c, {.frozen = o_.frozen});
    Json j;
    j["config"] = config_to_json(s.config);
    j["odometer"] = chips_to_json(s.odometer.fires);
    j["sink_chips"] = s.sink_chips;
    emit(j, config_to_text(s.config));
    return kExitOk;
  }

  int cmd_identity() {
    const GasketGraph g = graph();
    const Configuration e = identity(g);
    maybe_render(g, e);
    emit(config_to_json(e), config_to_text(e));
    return kExitOk;
  }

  int cmd_burn() {
    const Configuration c = load_config();
    const GasketGraph g = graph_of(c);
    const auto b = is_recurrent_burning(g, c);
    Json j;
    j["recurrent"] = b.recurrent;
    j["odometer"] = chips_to_json(b.odometer.fires);
    emit(j, b.recurrent ? "recurrent" : "not recurrent");
    return kExitOk;
  }

  static Json report(const std::string& check, int level, bool pass, Json details) {
    Json j;
    j["check"] = check;
    j["level"] = level;
    j["pass"] = pass;
    j["details"] = std::move(details);
    return j;
  }

  static std::string verdict(const std::string& what, bool pass) {
    return what + ": " + (pass ? "pass" : "FAIL");
  }

  static Json mismatch_json(const std::optional<Mismatch>& m) {
    if (!m) return nullptr;
    Json j;
    j["vertex"] = m->vertex;
    j["coord"] = {m->coord.a, m->coord.b};
    j["expected"] = m->expected;
    j["actual"] = m->actual;
    return j;
  }

  int cmd_selfsim_id() {
    require_level_cap();
    const GasketGraph g = build_gasket(o_.level);
    const Configuration built = build_identity_theorem(o_.level);
    const bool pass = built == identity(g);
    maybe_render(g, built);
    Json d;
    d["config"] = config_to_json(built);
    d["matches_algorithmic_identity"] = pass;
    emit(report("identity", o_.level, pass, d), config_to_text(built) + "\n" + verdict("identity", pass));
    return pass ? kExitOk : kExitVerificationFailed;
  }

  int cmd_verify() {
    require_level_cap();
    Json d;
    bool pass = false;
    if (o_.check == "doubling") {
      const auto r = verify_doubling(o_.level);
      pass = r.pass;
      d["gain"] = r.gain;
      d["expected_gain"] = r.expected_gain;
      d["pattern_restored"] = r.pattern_restored;
      d["mismatch"] = mismatch_json(r.mismatch);
      d["normal_frozen_gain"] = r.normal_frozen_gain;
      d["normal_frozen_restored"] = r.normal_frozen_restored;
    } else if (o_.check == "transport") {
      const GasketGraph g = build_gasket(o_.level, BoundaryCondition::corner_sink(Corner::LowerLeft));
      const Configuration eta = o_.config.empty() ? random_recurrent(g, o_.seed) : load_config();
      if (!eta.belongs_to(g)) throw UsageError("transport input must live on the corner_sink:lower_left graph");
      const auto r = verify_corner_transport(g, eta);
      pass = r.pass;
      d["input"] = config_to_json(eta);
      d["returned"] = r.returned;
      d["sink_chips"] = r.sink_chips;
      d["expected_sink_chips"] = r.expected_sink_chips;
      d["mismatch"] = mismatch_json(r.mismatch);
    } else {
      const GasketGraph g = build_gasket(o_.level);
      const Configuration eta = o_.config.empty() ? build_M(o_.level, 2, 2, 2).config : load_config();
      if (!eta.belongs_to(g)) throw UsageError("junction input must live on the normal graph of the given level");
      const auto r = verify_junction_invariance(g, eta);
      pass = r.pass;
      d["input"] = config_to_json(eta);
      d["matched"] = config_to_json(r.matched);
      d["recurrent"] = r.recurrent;
      d["invariant"] = r.invariant;
      d["mismatch"] = mismatch_json(r.mismatch);
    }
    emit(report(o_.check, o_.level, pass, d), verdict(o_.check, pass));
    return pass ? kExitOk : kExitVerificationFailed;
  }

  int cmd_snf() {
    const GasketGraph g = graph();
    const InvariantFactors f = sandpile_group(g);
    Json j;
    j["level"] = g.level();
    j["boundary"] = to_string(g.boundary());
    j.update(invariants_to_json(f));
    j["determinant"] = determinant(reduced_laplacian<BigInt>(g)).str();
    emit(j, f.str() + " (order " + f.order().str() + ")");
    return kExitOk;
  }

  int cmd_theorem() {
    require_level_cap();
    const auto r = check_group_theorem(o_.level);
    Json d;
    d["convention"] = r.convention;
    d["orders_match"] = r.orders_match;
    d["lhs"] = invariants_to_json(r.lhs);
    d["rhs"] = invariants_to_json(r.rhs);
    Json parts;
    const char* names[] = {"up", "left", "right"};
    for (std::size_t i = 0; i < r.rhs_parts.size(); ++i) parts[names[i]] = invariants_to_json(r.rhs_parts[i]);
    d["rhs_parts"] = std::move(parts);
    emit(report("group-theorem", r.level, r.pass, d),
         r.lhs.str() + " vs " + r.rhs.str() + "\n" + verdict("group theorem", r.pass));
    return r.pass ? kExitOk : kExitVerificationFailed;
  }

  int cmd_tau() {
    require_level_cap();
    Json j;
    j["level"] = o_.level;
    j["method"] = o_.method;
    bool pass = true;
    std::string text;
    std::optional<BigInt> rec, mt;
    if (o_.method != "matrix-tree") rec = tau_recursion(o_.level);
    if (o_.method != "recursion") mt = tau_matrix_tree(o_.level);
    const BigInt tau = rec ? *rec : *mt;
    j["tau"] = tau.str();
    if (rec && mt) {
      pass = *rec == *mt;
      j["methods_agree"] = pass;
    }
    const bool closed = tau_fourth_power_identity(o_.level, tau);
    j["fourth_power_identity"] = closed;
    pass = pass && closed;
    emit(j, tau.str());
    return pass ? kExitOk : kExitVerificationFailed;
  }

  static Json eigen_json(const Eigenvalue& e) {
    Json j;
    if (e.exact) j["exact"] = e.exact->str();
    j["re"] = e.value.real();
    j["im"] = e.value.imag();
    return j;
  }

  int cmd_eigs() {
    require_level_cap();
    const GasketGraph g = build_gasket(o_.level);
    Json j;
    j["level"] = o_.level;
    std::ostringstream os;
    if (o_.all) {
      const CharacterTable t = enumerate_characters(g, o_.cap);
      j["order"] = t.order.str();
      Json list = Json::array();
      for (const auto& e : t.eigenvalues) {
        list.push_back(eigen_json(e));
        os << e.value.real() << (e.value.imag() < 0 ? "" : "+") << e.value.imag() << "i\n";
      }
      j["eigenvalues"] = std::move(list);
    } else {
      if (o_.level < 1) throw UsageError("h_1 characters need level >= 1");
      Json list = Json::array();
      const int cells = static_cast<int>(level1_cells(o_.level).size());
      for (int i = 1; i <= cells; ++i) {
        const Eigenvalue e = eigenvalue(g, embed_h1(g, i));
        Json item = eigen_json(e);
        item["cell"] = i;
        list.push_back(std::move(item));
        os << "cell " << i << ": " << e.exact->str() << " = " << decimal(*e.exact) << '\n';
      }
      j["h1"] = std::move(list);
    }
    std::string text = os.str();
    if (!text.empty()) text.pop_back();
    emit(j, text);
    return kExitOk;
  }

  int cmd_distance() {
    require_level_cap();
    const GasketGraph g = build_gasket(o_.level);
    const CharacterTable t = enumerate_characters(g, o_.cap);
    const Distance d = exact_distance(t, o_.t);
    Json j;
    j["level"] = o_.level;
    j["t"] = d.t;
    j["order"] = t.order.str();
    j["l2"] = d.l2;
    j["half_l2"] = d.half_l2;
    j["tv_upper"] = d.tv_upper;
    std::ostringstream os;
    os.precision(12);
    os << "l2 " << d.l2 << ", tv <= " << d.tv_upper;
    emit(j, os.str());
    return kExitOk;
  }

  int cmd_simulate() {
    require_level_cap();
    const GasketGraph g = build_gasket(o_.level);
    Json j;
    j["level"] = o_.level;
    j["steps"] = o_.steps;
    j["seed"] = o_.seed;
    std::ostringstream os;
    if (o_.trials == 1) {
      ChainState s = make_chain(identity(g), trajectory_seed(o_.seed, 0));
      for (std::uint64_t i = 0; i < o_.steps; ++i) advance(g, s);
      j["config"] = config_to_json(s.config);
      if (o_.level >= 1) j["chi"] = distinguishing_statistic(g, s.config.chips);
      os << config_to_text(s.config);
    } else {
      if (o_.level < 1) throw UsageError("the distinguishing statistic needs level >= 1");
      const Estimate e = estimate_chi_decay(g, o_.steps, {.trials = o_.trials, .seed = o_.seed});
      const double expected = chi_decay_exact(g, o_.steps).convert_to<double>();
      j["trials"] = o_.trials;
      j["chi_mean"] = e.mean;
      j["chi_stderr"] = e.stderr_;
      j["chi_expected"] = expected;
      os << "E[chi] = " << e.mean << " +- " << e.stderr_ << " (exact " << expected << ")";
    }
    emit(j, os.str());
    return kExitOk;
  }

  int cmd_report() {
    if (o_.monte_carlo) require_level_cap();
    MixingOptions opts;
    opts.monte_carlo = o_.monte_carlo;
    opts.mc.trials = o_.trials > 1 ? o_.trials : 10'000;
    opts.mc.seed = o_.seed;
    const MixingReport r = mixing_report(o_.level, opts);
    Json j;
    j["level"] = r.level;
    j["vertices"] = r.vertices;
    j["lower_bound_raw"] = r.lower_bound_raw;
    j["lower_bound_t"] = r.lower_bound_t;
    j["upper_bound_t"] = r.upper_bound_t;
    Json curve = Json::array();
    for (const auto& p : r.r_curve) {
      Json item;
      item["t"] = p.t;
      item["R"] = p.r;
      item["tv_lower_bound"] = p.value;
      curve.push_back(std::move(item));
    }
    j["r_curve"] = std::move(curve);
    Json mc = Json::array();
    for (const auto& p : r.monte_carlo) {
      Json item;
      item["t"] = p.t;
      item["mean"] = p.estimate.mean;
      item["stderr"] = p.estimate.stderr_;
      item["expected"] = p.expected;
      mc.push_back(std::move(item));
    }
    j["monte_carlo"] = std::move(mc);
    std::ostringstream os;
    os << "level " << r.level << " (|V| = " << r.vertices << "): t_mix >= " << r.lower_bound_t << " (raw "
       << r.lower_bound_raw << "), t_mix <= " << r.upper_bound_t;
    for (const auto& p : r.monte_carlo)
      os << "\nt=" << p.t << ": E[chi] " << p.estimate.mean << " +- " << p.estimate.stderr_ << " (exact " << p.expected
         << ")";
    emit(j, os.str());
    return kExitOk;
  }

  int cmd_render() {
    const Configuration c = load_config();
    const GasketGraph g = graph_of(c);
    RenderSpec spec;
    spec.format = parse_image_format(o_.format);
    spec.scale = o_.scale;
    const std::string bytes = render(g, c, spec);
    write_file(o_.out_path, bytes);
    Json j;
    j["path"] = o_.out_path;
    j["bytes"] = bytes.size();
    emit(j, "wrote " + o_.out_path);
    return kExitOk;
  }

  std::istream& in_;
  std::ostream& out_;
  Options o_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    Cli cli(in, out);
    return cli.run(argc, argv, err);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

}  // namespace gasketpile
