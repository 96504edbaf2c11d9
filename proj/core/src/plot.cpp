#include "covertbf/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "covertbf/csv.hpp"

namespace covertbf {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 72, kRight = 24, kTop = 40, kBottom = 56;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo, hi;
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double d = std::max(std::abs(lo) * 0.05, 1e-12);
    return {lo - d, hi + d};
  }
  const double d = 0.04 * (hi - lo);
  return {lo - d, hi + d};
}

// Axes, ticks and labels; callers draw data in axis units via mx/my.
class Canvas {
 public:
  Canvas(Range x, Range y) : x_(x), y_(y) {}

  double mx(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double my(double v) const { return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

  void frame(const PlotSpec& spec) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
         << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double xv = x_.lo + (x_.hi - x_.lo) * i / 4.0;
      const double yv = y_.lo + (y_.hi - y_.lo) * i / 4.0;
      out_ << "<text x=\"" << px(mx(xv)) << "\" y=\"" << px(kHeight - kBottom + 16) << "\" text-anchor=\"middle\">"
           << fmt(xv) << "</text>\n";
      out_ << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(my(yv) + 4) << "\" text-anchor=\"end\">" << fmt(yv)
           << "</text>\n";
    }
    out_ << "<text x=\"" << px(kWidth / 2) << "\" y=\"" << px(kTop - 14)
         << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title) << "</text>\n";
    out_ << "<text x=\"" << px((kLeft + kWidth - kRight) / 2) << "\" y=\"" << px(kHeight - 16)
         << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    out_ << "<text x=\"16\" y=\"" << px((kTop + kHeight - kBottom) / 2)
         << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << px((kTop + kHeight - kBottom) / 2) << ")\">"
         << escape(spec.y_label) << "</text>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* color, const char* extra = "") {
    out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << extra << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out_ << (i ? " " : "") << px(mx(pts[i].first)) << ',' << px(my(pts[i].second));
    out_ << "\"/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts, const char* color) {
    out_ << "<polygon fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out_ << (i ? " " : "") << px(mx(pts[i].first)) << ',' << px(my(pts[i].second));
    out_ << "\"/>\n";
  }

  void marker(double x, double y, const char* color) {
    out_ << "<circle cx=\"" << px(mx(x)) << "\" cy=\"" << px(my(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }

  void legend(int slot, const char* color, const std::string& label) {
    const double y = kTop + 14 + 16 * slot;
    out_ << "<line x1=\"" << px(kWidth - kRight - 150) << "\" y1=\"" << px(y - 4) << "\" x2=\""
         << px(kWidth - kRight - 130) << "\" y2=\"" << px(y - 4) << "\" stroke=\"" << color
         << "\" stroke-width=\"2\"/>\n";
    out_ << "<text x=\"" << px(kWidth - kRight - 124) << "\" y=\"" << px(y) << "\">" << escape(label) << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  Range x_, y_;
  std::ostringstream out_;
};

std::string cdf_svg(const std::vector<ResultRow>& rows, const PlotSpec& spec) {
  std::vector<double> kl;
  for (const auto& r : rows) {
    if (r.feasible) kl.push_back(spec.kl10 ? r.kl10 : r.kl01);
  }
  if (kl.empty()) throw InvalidInput("plot: no feasible rows");
  std::sort(kl.begin(), kl.end());
  double hi = kl.back();
  if (spec.threshold) hi = std::max(hi, *spec.threshold);
  Canvas c(padded(std::min(0.0, kl.front()), hi), {0.0, 1.0});
  c.frame(spec);
  // Subsample the staircase to at most ~2000 vertices; still deterministic.
  const std::size_t n = kl.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 1000);
  std::vector<std::pair<double, double>> pts{{kl.front(), 0.0}};
  for (std::size_t i = 0; i < n; i += stride) {
    const std::size_t j = std::min(n - 1, i + stride - 1);
    pts.emplace_back(kl[i], double(i) / n);
    pts.emplace_back(kl[j], double(j + 1) / n);
  }
  c.polyline(pts, "#1f77b4");
  if (spec.threshold) {
    c.polyline({{*spec.threshold, 0.0}, {*spec.threshold, 1.0}}, "#d62728", " stroke-dasharray=\"6 4\"");
    c.legend(1, "#d62728", "threshold " + fmt(*spec.threshold));
  }
  c.legend(0, "#1f77b4", "empirical CDF");
  return c.finish();
}

std::string sweep_svg(const std::vector<ResultRow>& rows, const PlotSpec& spec) {
  const auto points = summarize_sweep(rows);
  std::vector<SweepPoint> ok;
  for (const auto& p : points) {
    if (p.n_feasible > 0) ok.push_back(p);
  }
  if (ok.empty()) throw InvalidInput("plot: no feasible rows");
  double lo = 1e300, hi = -1e300;
  for (const auto& p : ok) {
    const double m = spec.rate ? p.mean_rate : p.mean_mi;
    const double s = spec.rate ? p.std_rate : p.std_mi;
    lo = std::min(lo, m - s);
    hi = std::max(hi, m + s);
  }
  Canvas c(padded(ok.front().axis_value, ok.back().axis_value), padded(lo, hi));
  c.frame(spec);
  std::vector<std::pair<double, double>> band, mean;
  for (const auto& p : ok) {
    const double m = spec.rate ? p.mean_rate : p.mean_mi;
    band.emplace_back(p.axis_value, m + (spec.rate ? p.std_rate : p.std_mi));
    mean.emplace_back(p.axis_value, m);
  }
  for (auto it = ok.rbegin(); it != ok.rend(); ++it) {
    const double m = spec.rate ? it->mean_rate : it->mean_mi;
    band.emplace_back(it->axis_value, m - (spec.rate ? it->std_rate : it->std_mi));
  }
  c.polygon(band, "#1f77b4");
  c.polyline(mean, "#1f77b4");
  for (const auto& [x, y] : mean) c.marker(x, y, "#1f77b4");
  c.legend(0, "#1f77b4", "mean +/- std");
  return c.finish();
}

std::string detection_svg(const std::vector<ResultRow>& rows, const PlotSpec& spec) {
  std::vector<ResultRow> ok;
  for (const auto& r : rows) {
    if (r.feasible) ok.push_back(r);
  }
  if (ok.empty()) throw InvalidInput("plot: no feasible rows");
  std::sort(ok.begin(), ok.end(), [](const ResultRow& a, const ResultRow& b) {
    return a.axis_value < b.axis_value || (a.axis_value == b.axis_value && a.scene_id < b.scene_id);
  });
  const double x0 = ok.front().axis_value, x1 = ok.back().axis_value;
  Canvas c(padded(x0, x1), {0.0, 1.05});
  c.frame(spec);
  // Analytic curves depend on the ratio only.
  std::vector<std::pair<double, double>> fa, md, xi;
  for (int i = 0; i <= 200; ++i) {
    const double r = x0 + (x1 - x0) * i / 200.0;
    const DetectionReport d = detection_error_probs({1.0, r});
    fa.emplace_back(r, d.p_fa);
    md.emplace_back(r, d.p_md);
    xi.emplace_back(r, d.xi);
  }
  c.polyline(fa, "#1f77b4");
  c.polyline(md, "#ff7f0e");
  c.polyline(xi, "#2ca02c");
  for (const auto& r : ok) {
    c.marker(r.axis_value, r.p_fa, "#1f77b4");
    c.marker(r.axis_value, r.p_md, "#ff7f0e");
    c.marker(r.axis_value, r.xi, "#2ca02c");
  }
  c.legend(0, "#1f77b4", "P_FA");
  c.legend(1, "#ff7f0e", "P_MD");
  c.legend(2, "#2ca02c", "xi");
  return c.finish();
}

}  // namespace

std::string render_svg(const std::vector<ResultRow>& rows, const PlotSpec& spec) {
  if (rows.empty()) throw InvalidInput("plot: no data rows");
  switch (spec.kind) {
    case PlotKind::kCdf:
      return cdf_svg(rows, spec);
    case PlotKind::kSweep:
      return sweep_svg(rows, spec);
    case PlotKind::kDetection:
      return detection_svg(rows, spec);
  }
  throw InvalidInput("plot: unknown kind");
}

void render_plot(const std::string& csv_path, const std::string& svg_path, const PlotSpec& spec) {
  const std::string svg = render_svg(read_rows(csv_path), spec);
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + svg_path + " for writing");
  out << svg;
}

}  // namespace covertbf
