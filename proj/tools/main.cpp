#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mobius/error.hpp"
#include "mobius/serialize.hpp"
#include "mobius/svg.hpp"
#include "mobius/tuple_io.hpp"
#include "scenarios.hpp"

namespace {

using namespace mobius;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kPartial = 3, kInconsistent = 4 };

int emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return kOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kFailure;
  }
  out << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  return kOk;
}

Json envelope(const char* command, const std::string& file) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["tuple_file"] = file;
  return j;
}

SvgScene axes_scene(const Tuple& t, std::string title) {
  SvgScene s;
  s.title = std::move(title);
  for (std::size_t i = 0; i < t.size(); ++i) s.axes.push_back({t.maps[i], "#2c3e50", "g" + std::to_string(i + 1)});
  return s;
}

int write_svg(const SvgScene& s, const std::string& path) {
  if (path.empty()) return kOk;
  return emit(render_svg(s), path);
}

struct Common {
  std::string file;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("tuple", c.file, "tuple file, one 'a b c d' matrix per line")->required();
  cmd->add_option("-o,--output", c.out, "output path (default stdout)");
}

int cmd_classify(const Common& c, const std::string& preset_name) {
  const Tuple t = load_tuple(c.file);
  const LociReport r = classify(t, preset(preset_name));
  const ConsistencyVerdict v = sdc_crosscheck(r);
  if (emit(to_json(r).dump(2), c.out) != kOk) return kFailure;
  if (!v.consistent) {
    for (const auto& s : v.violations) std::cerr << "inconsistent: " << s << "\n";
    return kInconsistent;
  }
  if (r.partial) {
    std::cerr << "classify: budget exhausted, report is partial\n";
    return kPartial;
  }
  return kOk;
}

int cmd_certify(const Common& c, const MulticoneConfig& cfg, const std::string& svg) {
  const Tuple t = load_tuple(c.file);
  const MulticoneResult r = find_multicone(t.maps, cfg);
  Json j = envelope("certify", c.file);
  SvgScene scene = axes_scene(t, "multicone search");
  if (r.ok()) {
    const MulticoneVerification v = verify_multicone(t.maps, *r.certificate);
    j["certificate"] = to_json(*r.certificate);
    j["verification"] = to_json(v);
    scene.layers.push_back({r.certificate->multicone, "#58d68d", "multicone"});
    if (emit(j.dump(2), c.out) != kOk || write_svg(scene, svg) != kOk) return kFailure;
    return v.ok ? kOk : kFailure;
  }
  j["failure"] = to_json(*r.failure);
  if (r.failure->point) scene.markers.push_back({*r.failure->point, "#c0392b", "limit sets touch"});
  emit(j.dump(2), c.out);
  write_svg(scene, svg);
  std::cerr << "certify: " << to_string(r.failure->kind) << ": " << r.failure->detail << "\n";
  return r.failure->kind == MulticoneFailureKind::Budget ? kPartial : kFailure;
}

int cmd_limit_set(const Common& c, int depth, double gap, const std::string& side, const std::string& svg) {
  const Tuple t = load_tuple(c.file);
  const LimitSetApprox ls =
      side == "fwd" ? forward_limit_set(t.maps, depth, gap) : backward_limit_set(t.maps, depth, gap);
  Json j = envelope("limit-set", c.file);
  j["limit_set"] = to_json(ls);
  SvgScene scene = axes_scene(t, (side == "fwd" ? "forward" : "backward") + std::string(" limit set hull"));
  scene.layers.push_back({ls.hull, "#f5b041", "hull"});
  if (emit(j.dump(2), c.out) != kOk) return kFailure;
  return write_svg(scene, svg);
}

int cmd_explore(const Common& c, const SemidiscreteConfig& cfg) {
  const Tuple t = load_tuple(c.file);
  const SemidiscreteSearch s = refute_semidiscrete(t, cfg);
  Json j = envelope("explore", c.file);
  j["threshold"] = cfg.threshold;
  j["witness"] = s.witness ? to_json(*s.witness) : Json(nullptr);
  j["best"] = s.best ? to_json(*s.best) : Json(nullptr);
  j["partial"] = s.partial;
  if (emit(j.dump(2), c.out) != kOk) return kFailure;
  return s.partial ? kPartial : kOk;
}

int cmd_spectral(const Common& c, int max_len) {
  const Tuple t = load_tuple(c.file);
  const SpectralEstimate e = lower_spectral_estimate(t.maps, max_len);
  std::ostringstream csv;
  csv << "length,min_norm_root\n" << std::setprecision(17);
  for (const auto& [len, root] : e.per_length) csv << len << "," << root << "\n";
  return emit(csv.str(), c.out);
}

int cmd_reproduce(const std::string& name, bool list, const std::string& svg_dir, bool json) {
  if (list || name.empty()) {
    for (const auto& n : tools::scenario_names()) std::cout << n << "\n";
    return name.empty() && !list ? kUsage : kOk;
  }
  const tools::ScenarioResult r = tools::run_scenario(name);
  if (json) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = r.name;
    Json checks = Json::array();
    for (const auto& ch : r.checks) {
      checks.push_back(Json{{"id", ch.id}, {"op", ch.op}, {"expected", ch.expected},
                            {"measured", ch.measured}, {"basis", ch.basis}, {"pass", ch.pass}});
    }
    j["checks"] = checks;
    j["pass"] = r.pass();
    std::cout << j.dump(2) << "\n";
  } else {
    tools::print_table(std::cout, r);
  }
  if (!svg_dir.empty()) {
    std::filesystem::create_directories(svg_dir);
    const std::string path = (std::filesystem::path(svg_dir) / (name + ".svg")).string();
    if (emit(render_svg(r.figure), path) != kOk) return kFailure;
    if (!json) std::cout << "figure written to " << path << "\n";
  }
  return r.pass() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semigroups of real Moebius transformations: loci, multicones, limit sets"};
  app.require_subcommand(1);

  Common cls;
  std::string preset_name = "quick";
  auto* classify_cmd = app.add_subcommand("classify", "classify a tuple into the loci, JSON report");
  add_common(classify_cmd, cls);
  classify_cmd->add_option("--budget-preset", preset_name)->check(CLI::IsMember({"quick", "thorough"}));

  Common cert;
  MulticoneConfig mcfg;
  std::string cert_svg;
  auto* certify_cmd = app.add_subcommand("certify", "search for a multicone and verify it");
  add_common(certify_cmd, cert);
  certify_cmd->add_option("--seed-depth", mcfg.seed_depth)->check(CLI::Range(1, 16));
  certify_cmd->add_option("--max-iter", mcfg.max_iter)->check(CLI::Range(1, 100000));
  certify_cmd->add_option("--margin", mcfg.margin)->check(CLI::Range(1e-14, 0.1));
  certify_cmd->add_option("--svg", cert_svg, "write a figure");

  Common lim;
  int depth = kDefaultLimitDepth;
  double gap = kDefaultHullGap;
  std::string side = "fwd", lim_svg;
  auto* limit_cmd = app.add_subcommand("limit-set", "approximate a limit set and its hull");
  add_common(limit_cmd, lim);
  limit_cmd->add_option("--depth", depth)->check(CLI::Range(1, 24));
  limit_cmd->add_option("--gap", gap)->check(CLI::Range(1e-6, 3.0));
  limit_cmd->add_option("--side", side)->check(CLI::IsMember({"fwd", "bwd"}));
  limit_cmd->add_option("--svg", lim_svg, "write a figure");

  Common exp;
  SemidiscreteConfig scfg;
  auto* explore_cmd = app.add_subcommand("explore", "beam search for words close to the identity");
  add_common(explore_cmd, exp);
  explore_cmd->add_option("--max-len", scfg.max_len)->check(CLI::Range(1, 40));
  explore_cmd->add_option("--beam", scfg.beam_width)->check(CLI::Range(1, 1 << 20));
  explore_cmd->add_option("--threshold", scfg.threshold)->check(CLI::Range(0.0, 10.0));

  Common spectral_args;
  int spectral_len = 8;
  auto* spectral_cmd = app.add_subcommand("spectral", "per-length lower spectral estimate as CSV");
  add_common(spectral_cmd, spectral_args);
  spectral_cmd->add_option("--max-len", spectral_len)->check(CLI::Range(1, 16));

  std::string scenario, svg_dir;
  bool list = false, as_json = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "run a scripted scenario and grade it");
  reproduce_cmd->add_option("name", scenario);
  reproduce_cmd->add_flag("--list", list, "list scenario names");
  reproduce_cmd->add_option("--svg-dir", svg_dir, "directory for the scenario figure");
  reproduce_cmd->add_flag("--json", as_json, "print results as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(cls, preset_name);
    if (*certify_cmd) return cmd_certify(cert, mcfg, cert_svg);
    if (*limit_cmd) return cmd_limit_set(lim, depth, gap, side, lim_svg);
    if (*explore_cmd) return cmd_explore(exp, scfg);
    if (*spectral_cmd) return cmd_spectral(spectral_args, spectral_len);
    if (*reproduce_cmd) return cmd_reproduce(scenario, list, svg_dir, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::EmptyInput:
      case ErrorCode::InvalidMatrix:
      case ErrorCode::UnknownScenario:
        return kUsage;
      case ErrorCode::BudgetExceeded:
        return kPartial;
      default:
        return kFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
