#include "equicycle/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "equicycle/error.hpp"

namespace equicycle {

namespace {

const char* region_name(PointCount c) {
  switch (c) {
    case PointCount::One: return "One";
    case PointCount::Thirteen: return "Thirteen";
    case PointCount::TwentyFive: return "TwentyFive";
  }
  return "?";
}

const char* bool_name(bool b) { return b ? "true" : "false"; }

std::string fixed_digits(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

std::string format_real(double v) { return fixed_digits(v, 15); }

std::string config_hash(const Params& params, const IntegratorConfig& cfg) {
  char canon[512];
  std::snprintf(canon, sizeof canon,
                "p1=%.17g;p2=%.17g;s1=%.17g;s2=%.17g;rel_tol=%.17g;"
                "abs_tol=%.17g;max_steps=%ld;initial_step=%.17g",
                params.p1, params.p2, params.s1, params.s2, cfg.rel_tol,
                cfg.abs_tol, cfg.max_steps, cfg.initial_step);
  std::uint64_t h = 14695981039346656037ull;
  for (const char* c = canon; *c != '\0'; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 1099511628211ull;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016" PRIx64, h);
  return hex;
}

AnalysisReport analyze(const Params& params, const IntegratorConfig& cfg,
                       bool search_cycles) {
  require_admissible(params);
  cfg.validate();
  AnalysisReport rep;
  rep.params = params;
  rep.integrator = cfg;
  rep.region = classify_region(params);
  rep.origin = origin_stability(params);
  rep.sigma_A = sigma_A(params);
  rep.sigma_B = sigma_B(params);
  if (params.s2 > 1.0) rep.conditions = theorem_conditions(params);
  rep.equilibria = all_equilibria(params);
  if (search_cycles) {
    rep.cycles = find_limit_cycles(params, cfg, rep.equilibria);
    rep.cycles_searched = true;
  }
  rep.provenance.config_hash = config_hash(params, cfg);
  return rep;
}

std::vector<std::string> report_problems(const AnalysisReport& report) {
  std::vector<std::string> out;
  const auto expected = static_cast<std::size_t>(report.region.count);
  if (report.equilibria.size() != expected) {
    out.push_back("region expects " + std::to_string(expected) +
                  " equilibria, report lists " +
                  std::to_string(report.equilibria.size()));
  }
  if (!report.cycles_searched && !report.cycles.empty()) {
    out.push_back("cycles present although no search was run");
  }
  for (std::size_t i = 0; i < report.cycles.size(); ++i) {
    const CycleResult& c = report.cycles[i];
    const std::string tag = "cycle " + std::to_string(i + 1) + ": ";
    if (c.enclosed_count != 1 && c.enclosed_count != 13 &&
        c.enclosed_count != 25) {
      out.push_back(tag + "encloses " + std::to_string(c.enclosed_count) +
                    " equilibria");
    }
    if (static_cast<std::size_t>(c.enclosed_count) > report.equilibria.size()) {
      out.push_back(tag + "encloses more equilibria than exist");
    }
    if (c.enclosed_index_sum != 1) {
      out.push_back(tag + "index sum " + std::to_string(c.enclosed_index_sum));
    }
  }
  return out;
}

void validate_report(const AnalysisReport& report) {
  const auto problems = report_problems(report);
  if (problems.empty()) return;
  std::string msg = "inconsistent report:";
  for (const auto& p : problems) msg += " " + p + ";";
  throw Error(ErrorCode::InvalidArgument, msg);
}

// ---------------------------------------------------------------- CSV

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    row_open = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else {
      field += c;
    }
  }
  if (row_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

const char* const kCsvColumns[] = {
    "record", "branch", "kind", "stability", "index", "r", "theta", "x", "y",
    "eig1_re", "eig1_im", "eig2_re", "eig2_im", "abel_fixed_point",
    "multiplier", "stable", "hyperbolic", "counterclockwise",
    "enclosed_count", "enclosed_index_sum"};
constexpr std::size_t kCsvWidth = std::size(kCsvColumns);

void write_row(std::ostringstream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i != 0) os << ',';
    os << csv_field(row[i]);
  }
  os << '\n';
}

}  // namespace

std::string emit_csv(const AnalysisReport& report) {
  std::ostringstream os;
  write_row(os, {std::begin(kCsvColumns), std::end(kCsvColumns)});
  for (const auto& eq : report.equilibria) {
    std::vector<std::string> row(kCsvWidth);
    row[0] = "equilibrium";
    row[1] = to_string(eq.branch);
    row[2] = to_string(eq.kind);
    row[3] = to_string(eq.stability);
    row[4] = std::to_string(eq.index);
    row[5] = format_real(eq.polar.r());
    row[6] = format_real(eq.polar.theta());
    row[7] = format_real(eq.plane.x);
    row[8] = format_real(eq.plane.y);
    row[9] = format_real(eq.eigenvalues[0].real());
    row[10] = format_real(eq.eigenvalues[0].imag());
    row[11] = format_real(eq.eigenvalues[1].real());
    row[12] = format_real(eq.eigenvalues[1].imag());
    write_row(os, row);
  }
  for (const auto& cyc : report.cycles) {
    std::vector<std::string> row(kCsvWidth);
    row[0] = "cycle";
    row[13] = format_real(cyc.abel_fixed_point);
    row[14] = format_real(cyc.multiplier);
    row[15] = bool_name(cyc.stable);
    row[16] = bool_name(cyc.hyperbolic);
    row[17] = bool_name(cyc.counterclockwise);
    row[18] = std::to_string(cyc.enclosed_count);
    row[19] = std::to_string(cyc.enclosed_index_sum);
    write_row(os, row);
  }
  return os.str();
}

// ---------------------------------------------------------------- JSON

std::string emit_json(const AnalysisReport& report) {
  using Json = nlohmann::ordered_json;
  auto sign_region = [](const SignRegion& s) {
    Json j;
    j["minus"] = s.sigma_minus;
    j["plus"] = s.sigma_plus;
    j["p1_inside"] = s.p1_inside;
    return j;
  };

  Json j;
  j["tool"] = {{"name", "equicycle"},
               {"version", report.provenance.tool_version},
               {"config_hash", report.provenance.config_hash}};
  j["params"] = {{"p1", report.params.p1},
                 {"p2", report.params.p2},
                 {"s1", report.params.s1},
                 {"s2", report.params.s2}};
  j["integrator"] = {{"rel_tol", report.integrator.rel_tol},
                     {"abs_tol", report.integrator.abs_tol},
                     {"max_steps", report.integrator.max_steps},
                     {"initial_step", report.integrator.initial_step}};
  j["region"] = {{"count", static_cast<int>(report.region.count)},
                 {"name", region_name(report.region.count)},
                 {"q", report.region.q_value},
                 {"infinity", to_string(report.region.infinity)}};
  j["origin"] = {{"kind", to_string(report.origin.kind)},
                 {"v1", report.origin.v1},
                 {"v2", report.origin.v2}};
  j["sigma_A"] = sign_region(report.sigma_A);
  j["sigma_B"] = sign_region(report.sigma_B);
  if (report.conditions) {
    j["conditions"] = {{"cond_i", report.conditions->cond_i},
                       {"cond_ii", report.conditions->cond_ii}};
  } else {
    j["conditions"] = nullptr;
  }

  Json eqs = Json::array();
  for (const auto& eq : report.equilibria) {
    Json e;
    e["branch"] = to_string(eq.branch);
    e["kind"] = to_string(eq.kind);
    e["stability"] = to_string(eq.stability);
    e["index"] = eq.index;
    e["r"] = eq.polar.r();
    e["theta"] = eq.polar.theta();
    e["x"] = eq.plane.x;
    e["y"] = eq.plane.y;
    e["eigenvalues"] = Json::array(
        {Json::array({eq.eigenvalues[0].real(), eq.eigenvalues[0].imag()}),
         Json::array({eq.eigenvalues[1].real(), eq.eigenvalues[1].imag()})});
    eqs.push_back(std::move(e));
  }
  j["equilibria"] = std::move(eqs);

  Json cycles = Json::array();
  for (const auto& cyc : report.cycles) {
    Json c;
    c["abel_fixed_point"] = cyc.abel_fixed_point;
    c["multiplier"] = cyc.multiplier;
    c["stable"] = cyc.stable;
    c["hyperbolic"] = cyc.hyperbolic;
    c["counterclockwise"] = cyc.counterclockwise;
    c["enclosed_count"] = cyc.enclosed_count;
    c["enclosed_index_sum"] = cyc.enclosed_index_sum;
    c["plane_sample_count"] = cyc.plane_samples.size();
    cycles.push_back(std::move(c));
  }
  j["cycles"] = {{"searched", report.cycles_searched},
                 {"items", std::move(cycles)}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- text

std::string emit_text(const AnalysisReport& report) {
  std::ostringstream os;
  const Params& p = report.params;
  os << "params: p1=" << format_real(p.p1) << " p2=" << format_real(p.p2)
     << " s1=" << format_real(p.s1) << " s2=" << format_real(p.s2) << '\n';
  os << "region: " << region_name(report.region.count) << '\n';
  os << "equilibria: " << report.equilibria.size() << '\n';
  os << "Q: " << format_real(report.region.q_value) << '\n';
  os << "sigma_A: [" << format_real(report.sigma_A.sigma_minus) << ", "
     << format_real(report.sigma_A.sigma_plus) << "]\n";
  os << "sigma_B: [" << format_real(report.sigma_B.sigma_minus) << ", "
     << format_real(report.sigma_B.sigma_plus) << "]\n";
  if (report.conditions) {
    os << "cond_i: " << bool_name(report.conditions->cond_i) << '\n';
    os << "cond_ii: " << bool_name(report.conditions->cond_ii) << '\n';
  } else {
    os << "cond_i: n/a (needs s2 > 1)\n";
    os << "cond_ii: n/a (needs s2 > 1)\n";
  }
  os << "origin: " << to_string(report.origin.kind) << '\n';
  os << "V1: " << format_real(report.origin.v1) << '\n';
  os << "V2: " << format_real(report.origin.v2) << '\n';
  os << "infinity: " << to_string(report.region.infinity) << '\n';
  if (report.cycles_searched) {
    os << "cycles: " << report.cycles.size() << '\n';
    for (std::size_t i = 0; i < report.cycles.size(); ++i) {
      const CycleResult& c = report.cycles[i];
      os << "cycle " << i + 1
         << ": abel_fixed_point=" << format_real(c.abel_fixed_point)
         << " multiplier=" << format_real(c.multiplier)
         << (c.stable ? " stable" : " unstable")
         << (c.hyperbolic ? " hyperbolic" : " multiplicity-suspect")
         << (c.counterclockwise ? " counterclockwise" : " clockwise")
         << " enclosed=" << c.enclosed_count
         << " index_sum=" << c.enclosed_index_sum << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- SVG

namespace {

struct Bounds {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(PlanePoint p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

std::string svg_num(double v) { return fixed_digits(v, 9); }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Closed curve where dtheta/dt = 0, present when p2 s2 < 0.
std::vector<PlanePoint> critical_curve(const Params& p) {
  std::vector<PlanePoint> out;
  if (!is_admissible(p) || p.p2 * p.s2 >= 0.0) return out;
  constexpr int n = 720;
  for (int i = 0; i < n; ++i) {
    const double theta = kTwoPi * i / n;
    const double r = -p.p2 / (p.s2 + std::sin(kSymmetryOrder * theta));
    out.push_back(to_plane(PolarPoint(r, theta)));
  }
  return out;
}

const char* stability_fill(Stability s) {
  switch (s) {
    case Stability::Stable: return "#1f5fbf";
    case Stability::Unstable: return "#ffffff";
    case Stability::Neutral: return "#9a9a9a";
    case Stability::Mixed: return "#e0a030";
  }
  return "#000000";
}

const char* kind_class(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Focus: return "focus";
    case EquilibriumKind::Center: return "center";
    case EquilibriumKind::Node: return "node";
    case EquilibriumKind::Saddle: return "saddle";
    case EquilibriumKind::SaddleNode: return "saddle-node";
  }
  return "unknown";
}

}  // namespace

std::string emit_svg_portrait(const AnalysisReport& report,
                              std::span<const Trajectory> trajectories) {
  const auto theta_curve = critical_curve(report.params);

  Bounds b;
  for (const auto& eq : report.equilibria) b.add(eq.plane);
  for (const auto& c : report.cycles) {
    for (const auto& p : c.plane_samples) b.add(p);
  }
  for (const auto& t : trajectories) {
    for (const auto& p : t.points) b.add(p);
  }
  for (const auto& p : theta_curve) b.add(p);
  if (!(b.xmin <= b.xmax)) b = Bounds{-1.0, 1.0, -1.0, 1.0};
  double w = b.xmax - b.xmin;
  double h = b.ymax - b.ymin;
  if (w <= 0.0 && h <= 0.0) w = h = 2.0;
  if (w <= 0.0) w = h;
  if (h <= 0.0) h = w;
  const double cx = 0.5 * (b.xmin + b.xmax);
  const double cy = 0.5 * (b.ymin + b.ymax);
  const double vw = 1.2 * w;
  const double vh = 1.2 * h;
  const double extent = std::max(vw, vh);
  const double glyph = 0.012 * extent;
  const double stroke = 0.003 * extent;

  // Drawn y is -y so that the picture is not mirrored.
  auto pt = [](PlanePoint p) { return svg_num(p.x) + "," + svg_num(-p.y); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\""
     << " height=\"" << svg_num(800.0 * vh / vw) << "\" viewBox=\""
     << svg_num(cx - 0.5 * vw) << ' ' << svg_num(-cy - 0.5 * vh) << ' '
     << svg_num(vw) << ' ' << svg_num(vh) << "\">\n";
  os << "<rect class=\"background\" x=\"" << svg_num(cx - 0.5 * vw) << "\" y=\""
     << svg_num(-cy - 0.5 * vh) << "\" width=\"" << svg_num(vw)
     << "\" height=\"" << svg_num(vh) << "\" fill=\"#ffffff\"/>\n";

  if (!theta_curve.empty()) {
    os << "<path class=\"critical-set\" fill=\"none\" stroke=\"#888888\""
       << " stroke-width=\"" << svg_num(stroke) << "\" stroke-dasharray=\""
       << svg_num(4 * stroke) << ',' << svg_num(3 * stroke) << "\" d=\"M";
    for (std::size_t i = 0; i < theta_curve.size(); ++i) {
      os << (i == 0 ? "" : " L") << pt(theta_curve[i]);
    }
    os << " Z\"/>\n";
  }

  for (const auto& t : trajectories) {
    os << "<polyline class=\"trajectory " << xml_escape(t.label)
       << "\" fill=\"none\" stroke=\"#2a9d4a\" stroke-width=\""
       << svg_num(stroke) << "\" points=\"";
    // Points closer than a fraction of a glyph to the last drawn one add
    // nothing visible; the final point is always kept.
    const double min_gap = 0.3 * glyph;
    std::optional<PlanePoint> last;
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      const PlanePoint p = t.points[i];
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      const bool final_point = i + 1 == t.points.size();
      if (last && !final_point && distance(*last, p) < min_gap) continue;
      os << (last ? " " : "") << pt(p);
      last = p;
    }
    os << "\"/>\n";
  }

  for (const auto& c : report.cycles) {
    os << "<path class=\"cycle\" fill=\"none\" stroke=\"#c02020\""
       << " stroke-width=\"" << svg_num(2 * stroke) << "\" data-multiplier=\""
       << format_real(c.multiplier) << "\" data-enclosed=\""
       << c.enclosed_count << "\" d=\"M";
    // the last sample repeats the first
    const std::size_t n = c.plane_samples.size() > 1 ? c.plane_samples.size() - 1
                                                     : c.plane_samples.size();
    for (std::size_t i = 0; i < n; ++i) {
      os << (i == 0 ? "" : " L") << pt(c.plane_samples[i]);
    }
    os << " Z\"/>\n";
  }

  for (const auto& eq : report.equilibria) {
    const double x = eq.plane.x;
    const double y = -eq.plane.y;
    std::ostringstream attrs;
    attrs << "class=\"glyph " << kind_class(eq.kind) << "\" data-kind=\""
          << to_string(eq.kind) << "\" data-stability=\""
          << to_string(eq.stability) << "\" data-x=\"" << format_real(eq.plane.x)
          << "\" data-y=\"" << format_real(eq.plane.y) << "\" fill=\""
          << stability_fill(eq.stability) << "\" stroke=\"#000000\" stroke-width=\""
          << svg_num(0.5 * stroke) << '"';
    switch (eq.kind) {
      case EquilibriumKind::Saddle:
        os << "<path " << attrs.str() << " d=\"M" << svg_num(x - glyph) << ','
           << svg_num(y - glyph) << " L" << svg_num(x + glyph) << ','
           << svg_num(y + glyph) << " M" << svg_num(x - glyph) << ','
           << svg_num(y + glyph) << " L" << svg_num(x + glyph) << ','
           << svg_num(y - glyph) << "\"/>\n";
        break;
      case EquilibriumKind::SaddleNode:
        os << "<polygon " << attrs.str() << " points=\"" << svg_num(x) << ','
           << svg_num(y - glyph) << ' ' << svg_num(x + glyph) << ','
           << svg_num(y + glyph) << ' ' << svg_num(x - glyph) << ','
           << svg_num(y + glyph) << "\"/>\n";
        break;
      default:
        os << "<circle " << attrs.str() << " cx=\"" << svg_num(x) << "\" cy=\""
           << svg_num(y) << "\" r=\"" << svg_num(glyph) << "\"/>\n";
    }
  }

  const Params& p = report.params;
  const double font = 0.025 * extent;
  const double tx = cx - 0.5 * vw + font;
  const double ty = -cy - 0.5 * vh + 1.5 * font;
  os << "<text class=\"legend\" x=\"" << svg_num(tx) << "\" y=\"" << svg_num(ty)
     << "\" font-family=\"sans-serif\" font-size=\"" << svg_num(font) << "\">"
     << xml_escape("z-plane: x = Re z, y = Im z, r = x\xC2\xB2 + y\xC2\xB2")
     << "</text>\n";
  os << "<text class=\"legend\" x=\"" << svg_num(tx) << "\" y=\""
     << svg_num(ty + 1.4 * font) << "\" font-family=\"sans-serif\" font-size=\""
     << svg_num(font) << "\">"
     << xml_escape("p1=" + format_real(p.p1) + " p2=" + format_real(p.p2) +
                   " s1=" + format_real(p.s1) + " s2=" + format_real(p.s2))
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::vector<Trajectory> trace_separatrices(const AnalysisReport& report,
                                           double s_span) {
  if (!(s_span > 0.0) || !std::isfinite(s_span)) {
    throw Error(ErrorCode::InvalidArgument, "time span must be positive");
  }
  double feature = 0.0;
  for (const auto& eq : report.equilibria) {
    feature = std::max(feature, std::hypot(eq.plane.x, eq.plane.y));
  }
  for (const auto& c : report.cycles) {
    for (const auto& p : c.plane_samples) {
      feature = std::max(feature, std::hypot(p.x, p.y));
    }
  }
  for (const auto& p : critical_curve(report.params)) {
    feature = std::max(feature, std::hypot(p.x, p.y));
  }
  const double escape = 1.5 * std::max(feature, 1.0);

  std::vector<Trajectory> out;
  for (const auto& eq : report.equilibria) {
    if (eq.kind != EquilibriumKind::Saddle &&
        eq.kind != EquilibriumKind::SaddleNode) {
      continue;
    }
    const double scale =
        std::max(std::abs(eq.eigenvalues[0]), std::abs(eq.eigenvalues[1]));
    for (const auto& seed : separatrix_seeds(report.params, eq)) {
      std::vector<double> spans;
      if (seed.eigenvalue > 1e-6 * scale) {
        spans = {s_span};
      } else if (seed.eigenvalue < -1e-6 * scale) {
        spans = {-s_span};
      } else {
        spans = {s_span, -s_span};
      }
      for (double span : spans) {
        try {
          auto tr = trace_plane(report.params, seed.start, span,
                                report.integrator, escape, TimeScale::Rescaled);
          out.push_back({std::move(tr.points), "separatrix"});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BlowUp) throw;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- sweep

SweepNode sweep_node(const Params& params, const IntegratorConfig& cfg) {
  SweepNode node;
  node.params = params;
  node.q_value = quadratic_form(params);
  try {
    require_admissible(params);
    node.region_count = static_cast<int>(classify_region(params).count);
    if (params.s2 > 1.0) {
      const auto cond = theorem_conditions(params);
      node.cond_i = cond.cond_i;
      node.cond_ii = cond.cond_ii;
    }
    node.cycle_count = static_cast<int>(find_limit_cycles(params, cfg).size());
  } catch (const Error& e) {
    node.status = to_string(e.code());
  }
  return node;
}

std::string emit_sweep_grid(std::span<const SweepNode> nodes) {
  std::ostringstream os;
  write_row(os, {"p1", "p2", "s1", "s2", "q", "region_count", "cond_i",
                 "cond_ii", "cycle_count", "status"});
  auto opt = [](const std::optional<bool>& b) {
    return b ? std::string(bool_name(*b)) : std::string();
  };
  for (const auto& n : nodes) {
    write_row(os, {format_real(n.params.p1), format_real(n.params.p2),
                   format_real(n.params.s1), format_real(n.params.s2),
                   format_real(n.q_value), std::to_string(n.region_count),
                   opt(n.cond_i), opt(n.cond_ii), std::to_string(n.cycle_count),
                   n.status});
  }
  return os.str();
}

}  // namespace equicycle
