#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ipsim/bench.hpp"

namespace ipsim::bench {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

std::string fmt_opt(const std::optional<long long>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_csv(const std::vector<ResultRow>& rows, bool emit_timing) {
  std::ostringstream os;
  os << "model,protocol,N,cutoff,a,g,m,lambda,mu,theta,t,epsilon,r,"
        "error_lower,error_upper,bound,calls_prepare,calls_select,calls_Wl,"
        "calls_Wk,toffoli,wall_ms,seed\n";
  for (const auto& row : rows) {
    os << row.model << ',' << row.protocol << ',' << fmt_opt(row.n_sites) << ','
       << fmt_opt(row.cutoff) << ',' << fmt_opt(row.a) << ',' << fmt_opt(row.g)
       << ',' << fmt_opt(row.m) << ',' << fmt_opt(row.lambda) << ','
       << fmt_opt(row.mu) << ',' << fmt_opt(row.theta) << ','
       << fmt_double(row.t) << ',' << fmt_double(row.eps) << ','
       << fmt_opt(row.r) << ',' << fmt_opt(row.error_lower) << ','
       << fmt_opt(row.error_upper) << ',' << fmt_opt(row.bound) << ','
       << fmt_opt(row.calls_prepare) << ',' << fmt_opt(row.calls_select) << ','
       << fmt_opt(row.calls_wl) << ',' << fmt_opt(row.calls_wk) << ','
       << fmt_opt(row.toffoli) << ','
       << (emit_timing ? fmt_opt(row.wall_ms) : std::string()) << ','
       << row.seed << '\n';
  }
  return os.str();
}

std::string emit_json(const std::vector<ResultRow>& rows, bool emit_timing) {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    os << "  {";
    os << "\"model\": " << json_quote(row.model);
    os << ", \"protocol\": " << json_quote(row.protocol);
    const auto emit_ll = [&](const char* key, const std::optional<long long>& v) {
      if (v) os << ", \"" << key << "\": " << *v;
    };
    const auto emit_d = [&](const char* key, const std::optional<double>& v) {
      if (v) os << ", \"" << key << "\": " << fmt_double(*v);
    };
    emit_ll("N", row.n_sites);
    emit_ll("cutoff", row.cutoff);
    emit_d("a", row.a);
    emit_d("g", row.g);
    emit_d("m", row.m);
    emit_d("lambda", row.lambda);
    emit_d("mu", row.mu);
    emit_d("theta", row.theta);
    os << ", \"t\": " << fmt_double(row.t);
    os << ", \"epsilon\": " << fmt_double(row.eps);
    emit_ll("r", row.r);
    emit_d("error_lower", row.error_lower);
    emit_d("error_upper", row.error_upper);
    emit_d("bound", row.bound);
    emit_ll("calls_prepare", row.calls_prepare);
    emit_ll("calls_select", row.calls_select);
    emit_ll("calls_Wl", row.calls_wl);
    emit_ll("calls_Wk", row.calls_wk);
    emit_ll("toffoli", row.toffoli);
    if (emit_timing) emit_d("wall_ms", row.wall_ms);
    os << ", \"seed\": " << row.seed;
    if (!row.status.empty()) os << ", \"status\": " << json_quote(row.status);
    os << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  os << "]\n";
  return os.str();
}

namespace {

double sweep_x(const ResultRow& row, const std::string& param, std::size_t idx) {
  const auto from_ll = [](const std::optional<long long>& v, double fb) {
    return v ? static_cast<double>(*v) : fb;
  };
  const auto from_d = [](const std::optional<double>& v, double fb) {
    return v ? *v : fb;
  };
  const double fallback = static_cast<double>(idx + 1);
  if (param == "t") return row.t;
  if (param == "eps") return row.eps;
  if (param == "r") return from_ll(row.r, fallback);
  if (param == "N") return from_ll(row.n_sites, fallback);
  if (param == "cutoff") return from_ll(row.cutoff, fallback);
  if (param == "a") return from_d(row.a, fallback);
  if (param == "g") return from_d(row.g, fallback);
  if (param == "m") return from_d(row.m, fallback);
  if (param == "lambda" || param == "lambda_pen") return from_d(row.lambda, fallback);
  if (param == "mu") return from_d(row.mu, fallback);
  if (param == "theta") return from_d(row.theta, fallback);
  if (param == "seed") return static_cast<double>(row.seed);
  return fallback;
}

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

std::string emit_svg(const std::vector<ResultRow>& rows,
                     const std::string& sweep_param) {
  if (rows.empty()) throw Error("emit_svg: no rows to plot");

  struct Point {
    double x, y;
  };
  std::vector<std::string> order;
  std::map<std::string, std::vector<Point>> series;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.status.empty()) continue;
    double y = 0.0;
    if (row.error_upper) {
      y = *row.error_upper;
    } else if (row.bound) {
      y = *row.bound;
    } else {
      continue;
    }
    const double x = std::max(sweep_x(row, sweep_param, i), 1e-300);
    y = std::max(y, 1e-16);  // log-scale floor
    if (series.find(row.protocol) == series.end()) order.push_back(row.protocol);
    series[row.protocol].push_back({x, y});
    if (!any) {
      xmin = xmax = x;
      ymin = ymax = y;
      any = true;
    } else {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!any) throw Error("emit_svg: no plottable points");
  if (xmax <= xmin) xmax = xmin * 10.0;
  if (ymax <= ymin) ymax = ymin * 10.0;

  const double px0 = 80, px1 = 620, py0 = 540, py1 = 50;  // y axis points up
  const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
  const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
  const auto sx = [&](double x) {
    return px0 + (std::log10(x) - lx0) / (lx1 - lx0) * (px1 - px0);
  };
  const auto sy = [&](double y) {
    return py0 + (std::log10(y) - ly0) / (ly1 - ly0) * (py1 - py0);
  };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << (px1 - px0)
     << "\" height=\"" << (py0 - py1)
     << "\" fill=\"none\" stroke=\"#444\"/>\n";

  // Decade ticks on both axes.
  for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
    const double x = std::pow(10.0, d);
    os << "<line x1=\"" << fmt_coord(sx(x)) << "\" y1=\"" << py0 << "\" x2=\""
       << fmt_coord(sx(x)) << "\" y2=\"" << py0 + 6
       << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << fmt_coord(sx(x)) << "\" y=\"" << py0 + 22
       << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_tick(x)
       << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
    const double y = std::pow(10.0, d);
    os << "<line x1=\"" << px0 - 6 << "\" y1=\"" << fmt_coord(sy(y)) << "\" x2=\""
       << px0 << "\" y2=\"" << fmt_coord(sy(y)) << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << px0 - 10 << "\" y=\"" << fmt_coord(sy(y) + 4)
       << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_tick(y)
       << "</text>\n";
  }
  os << "<text x=\"" << 0.5 * (px0 + px1) << "\" y=\"585\" font-size=\"14\" "
        "text-anchor=\"middle\">"
     << (sweep_param.empty() ? "sweep index" : sweep_param) << "</text>\n";
  os << "<text x=\"20\" y=\"" << 0.5 * (py0 + py1)
     << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << 0.5 * (py0 + py1) << ")\">diamond distance</text>\n";

  int color = 0;
  for (const auto& name : order) {
    const auto& pts = series[name];
    const char* stroke = kPalette[color % 6];
    os << "<polyline fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << fmt_coord(sx(pts[i].x)) << ','
         << fmt_coord(sy(pts[i].y));
    }
    os << "\"/>\n";
    for (const auto& p : pts) {
      os << "<circle cx=\"" << fmt_coord(sx(p.x)) << "\" cy=\""
         << fmt_coord(sy(p.y)) << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
    }
    // Legend, top-right.
    const double ly = 60 + 20 * color;
    os << "<line x1=\"640\" y1=\"" << ly << "\" x2=\"670\" y2=\"" << ly
       << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"676\" y=\"" << ly + 4 << "\" font-size=\"12\">" << name
       << "</text>\n";
    ++color;
  }
  os << "</svg>\n";
  return os.str();
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << "\n";
  for (const auto& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << c.anchor
       << "]  measured=" << fmt_double(c.measured)
       << "  bound=" << fmt_double(c.bound)
       << "  margin=" << fmt_double(c.margin) << "\n";
  }
  os << (all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return os.str();
}

std::string VerifyReport::to_json() const {
  std::ostringstream os;
  os << "{\n  \"suite\": " << json_quote(suite) << ",\n  \"checks\": [\n";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    os << "    {\"name\": " << json_quote(c.name)
       << ", \"anchor\": " << json_quote(c.anchor)
       << ", \"measured\": " << fmt_double(c.measured)
       << ", \"bound\": " << fmt_double(c.bound)
       << ", \"margin\": " << fmt_double(c.margin)
       << ", \"pass\": " << (c.pass ? "true" : "false") << "}"
       << (i + 1 < checks.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"all_pass\": " << (all_pass() ? "true" : "false") << "\n}\n";
  return os.str();
}

}  // namespace ipsim::bench
