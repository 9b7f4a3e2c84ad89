#include "equicycle/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "equicycle/report.hpp"

namespace equicycle::cli {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Inadmissible:
      return kBadInput;
    default:
      return kNumericalFailure;
  }
}

namespace {

// Raised for problems found after CLI11 has accepted the command line.
struct BadInput {
  std::string message;
};

struct ParamFlags {
  std::optional<double> p1, p2, s1, s2;
};

Params require_params(const ParamFlags& f) {
  const std::pair<const char*, const std::optional<double>*> all[] = {
      {"--p1", &f.p1}, {"--p2", &f.p2}, {"--s1", &f.s1}, {"--s2", &f.s2}};
  for (const auto& [name, value] : all) {
    if (!value->has_value()) {
      throw BadInput{std::string("missing ") + name};
    }
    if (!std::isfinite(**value)) {
      throw BadInput{std::string(name) + " must be a finite number"};
    }
  }
  return {*f.p1, *f.p2, *f.s1, *f.s2};
}

void require_format(const std::string& format,
                    std::initializer_list<const char*> allowed,
                    const std::string& command) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  std::string msg = "format '" + format + "' not supported by " + command +
                    " (use";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw BadInput{msg + ")"};
}

unsigned default_jobs() {
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepNode> run_sweep(const Params& base, const std::string& axis,
                                 double from, double to, int steps,
                                 unsigned jobs, const IntegratorConfig& cfg) {
  std::vector<Params> grid(static_cast<std::size_t>(steps), base);
  for (int i = 0; i < steps; ++i) {
    const double v = from + (to - from) * i / (steps - 1);
    Params& p = grid[static_cast<std::size_t>(i)];
    if (axis == "p1") p.p1 = v;
    else if (axis == "p2") p.p2 = v;
    else if (axis == "s1") p.s1 = v;
    else p.s2 = v;
  }
  std::vector<SweepNode> nodes(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      nodes[i] = sweep_node(grid[i], cfg);
    }
  };
  const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(grid.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  return nodes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Equilibria, limit cycles and portraits of the Z12-equivariant "
               "family  z' = p z^5 zbar^4 + s z^6 zbar^5 - zbar^11"};
  app.name("equicycle");
  app.require_subcommand(1);
  app.allow_config_extras(false);

  ParamFlags pf;
  IntegratorConfig cfg;
  std::string output;
  std::string format;

  app.set_config("--config", "", "key=value file with defaults; flags win");
  app.add_option("--p1", pf.p1, "real part of p")->type_name("REAL");
  app.add_option("--p2", pf.p2, "imaginary part of p (nonzero)")->type_name("REAL");
  app.add_option("--s1", pf.s1, "real part of s")->type_name("REAL");
  app.add_option("--s2", pf.s2, "imaginary part of s (|s2| > 1)")->type_name("REAL");
  app.add_option("--rel-tol", cfg.rel_tol, "integrator relative tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--abs-tol", cfg.abs_tol, "integrator absolute tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--max-steps", cfg.max_steps, "integrator step budget")
      ->capture_default_str()
      ->check(CLI::Range(1000L, 1'000'000'000L));
  app.add_option("-o,--output", output, "write to this file instead of stdout");
  app.add_option("--format", format,
                 "text | csv | json | svg (default depends on the command)");

  auto* classify = app.add_subcommand(
      "classify", "region, sign intervals, theorem conditions, origin and infinity");
  auto* equilibria = app.add_subcommand("equilibria", "table of all equilibria");
  auto* cycles = app.add_subcommand("cycles", "limit cycles from the return map");
  auto* sweep = app.add_subcommand("sweep", "region and cycle atlas along one parameter");
  auto* portrait = app.add_subcommand("portrait", "SVG phase portrait");

  std::string axis = "p1";
  double from = 0.0;
  double to = 0.0;
  int steps = 101;
  unsigned jobs = default_jobs();
  sweep->add_option("--axis", axis, "parameter to vary")
      ->capture_default_str()
      ->check(CLI::IsMember({"p1", "p2", "s1", "s2"}));
  sweep->add_option("--from", from, "first grid value")->required();
  sweep->add_option("--to", to, "last grid value")->required();
  sweep->add_option("--steps", steps, "number of grid nodes")
      ->capture_default_str()
      ->check(CLI::Range(2, 10'000'000));
  sweep->add_option("--jobs", jobs, "worker threads (default: logical processors)")
      ->envname("EQUICYCLE_JOBS")
      ->capture_default_str()
      ->check(CLI::Range(1u, 4096u));

  std::optional<double> t_span;
  bool no_separatrices = false;
  portrait->add_option("--t-span", t_span,
                       "separatrix span in rescaled time (field / |z|^8), default 10")
      ->check(CLI::PositiveNumber);
  portrait->add_flag("--no-separatrices", no_separatrices, "skip separatrices");

  for (auto* sub : {classify, equilibria, cycles, sweep, portrait}) {
    sub->fallthrough();
    sub->footer("Parameters, tolerances, --config, --output and --format are "
                "shared by all commands; see equicycle --help.");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const CLI::ParseError& e) {
    // --help on a subcommand surfaces as CallForHelp above; the rest is input
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  std::string text;
  try {
    if (*sweep) {
      if (format.empty()) format = "csv";
      require_format(format, {"csv"}, "sweep");
      ParamFlags filled = pf;
      std::optional<double>* slot = axis == "p1"   ? &filled.p1
                                    : axis == "p2" ? &filled.p2
                                    : axis == "s1" ? &filled.s1
                                                   : &filled.s2;
      *slot = from;
      if (!std::isfinite(from) || !std::isfinite(to)) {
        throw BadInput{"--from and --to must be finite"};
      }
      const Params base = require_params(filled);
      cfg.validate();
      const auto nodes = run_sweep(base, axis, from, to, steps, jobs, cfg);
      text = emit_sweep_grid(nodes);
    } else {
      const Params params = require_params(pf);
      if (*classify) {
        if (format.empty()) format = "text";
        require_format(format, {"text", "json"}, "classify");
        const auto rep = analyze(params, cfg, false);
        text = format == "json" ? emit_json(rep) : emit_text(rep);
      } else if (*equilibria) {
        if (format.empty()) format = "csv";
        require_format(format, {"csv", "json"}, "equilibria");
        const auto rep = analyze(params, cfg, false);
        text = format == "json" ? emit_json(rep) : emit_csv(rep);
      } else if (*cycles) {
        if (format.empty()) format = "text";
        require_format(format, {"text", "csv", "json"}, "cycles");
        const auto rep = analyze(params, cfg, true);
        text = format == "json"  ? emit_json(rep)
               : format == "csv" ? emit_csv(rep)
                                 : emit_text(rep);
      } else {
        if (format.empty()) format = "svg";
        require_format(format, {"svg"}, "portrait");
        const auto rep = analyze(params, cfg, true);
        std::vector<Trajectory> seps;
        if (!no_separatrices) {
          seps = trace_separatrices(rep, t_span.value_or(kDefaultSeparatrixSpan));
        }
        text = emit_svg_portrait(rep, seps);
      }
    }
  } catch (const BadInput& e) {
    err << "error: " << e.message << '\n';
    return kBadInput;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  if (output.empty()) {
    out << text;
    out.flush();
    return out ? kOk : kIoFailure;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << output << " for writing\n";
    return kIoFailure;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing " << output << '\n';
    return kIoFailure;
  }
  return kOk;
}

}  // namespace equicycle::cli
