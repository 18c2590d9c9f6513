#pragma once
// Deterministic SVG regret plot: log-scaled rounds on x, regret on y, a
// shaded standard-error band, the mean curve, and the C * ln t reference as a
// dashed line. No timestamps, no randomness, fixed number formatting — the
// same aggregate always serializes to the same bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sim.hpp"

namespace mtb {

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

inline std::string regret_svg(const AggregateResult& agg, const std::string& title) {
  const double W = 760, H = 460, L = 70, R = 20, T = 40, B = 50;
  const double plot_w = W - L - R, plot_h = H - T - B;

  const double lx0 = std::log10(static_cast<double>(agg.rounds.front()));
  const double lx1 = std::log10(static_cast<double>(agg.rounds.back()));
  const double xspan = std::max(lx1 - lx0, 1e-9);
  double ymax = 1e-9;
  for (std::size_t i = 0; i < agg.rounds.size(); ++i) {
    const double se = agg.stderr_regret.empty() ? 0.0 : agg.stderr_regret[i];
    ymax = std::max(ymax, agg.mean_regret[i] + se);
    ymax = std::max(ymax, agg.lower_bound[i]);
  }
  ymax *= 1.05;

  const auto x_of = [&](std::int64_t t) {
    return L + (std::log10(static_cast<double>(t)) - lx0) / xspan * plot_w;
  };
  const auto y_of = [&](double v) { return T + plot_h - std::clamp(v, 0.0, ymax) / ymax * plot_h; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(W) + "\" height=\"" +
       detail::svg_num(H) + "\" viewBox=\"0 0 " + detail::svg_num(W) + " " + detail::svg_num(H) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + detail::svg_num(L) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">" + title +
       "</text>\n";

  // Axes and decade ticks.
  s += "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<path d=\"M" + detail::svg_num(L) + " " + detail::svg_num(T) + " L" + detail::svg_num(L) + " " +
       detail::svg_num(T + plot_h) + " L" + detail::svg_num(L + plot_w) + " " + detail::svg_num(T + plot_h) +
       "\"/>\n";
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1 + 1e-12)); ++e) {
    double tick = 1.0;
    for (int i = 0; i < e; ++i) tick *= 10.0;
    const double x = x_of(static_cast<std::int64_t>(tick));
    s += "<line x1=\"" + detail::svg_num(x) + "\" y1=\"" + detail::svg_num(T + plot_h) + "\" x2=\"" +
         detail::svg_num(x) + "\" y2=\"" + detail::svg_num(T + plot_h + 5) + "\" stroke=\"#444\"/>\n";
    s += "<text x=\"" + detail::svg_num(x - 12) + "\" y=\"" + detail::svg_num(T + plot_h + 18) + "\">1e" +
         std::to_string(e) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = ymax * i / 4.0;
    const double y = y_of(v);
    s += "<line x1=\"" + detail::svg_num(L - 5) + "\" y1=\"" + detail::svg_num(y) + "\" x2=\"" +
         detail::svg_num(L) + "\" y2=\"" + detail::svg_num(y) + "\" stroke=\"#444\"/>\n";
    char lab[32];
    std::snprintf(lab, sizeof lab, "%.1f", v);
    s += "<text x=\"" + detail::svg_num(L - 48) + "\" y=\"" + detail::svg_num(y + 4) + "\">" + lab + "</text>\n";
  }
  s += "<text x=\"" + detail::svg_num(L + plot_w / 2 - 20) + "\" y=\"" + detail::svg_num(H - 12) +
       "\">rounds</text>\n";
  s += "<text x=\"14\" y=\"" + detail::svg_num(T + plot_h / 2) + "\" transform=\"rotate(-90 14 " +
       detail::svg_num(T + plot_h / 2) + ")\">regret</text>\n";
  s += "</g>\n";

  // Standard-error band (when present).
  if (!agg.stderr_regret.empty()) {
    std::string pts;
    for (std::size_t i = 0; i < agg.rounds.size(); ++i)
      pts += detail::svg_num(x_of(agg.rounds[i])) + "," +
             detail::svg_num(y_of(agg.mean_regret[i] + agg.stderr_regret[i])) + " ";
    for (std::size_t i = agg.rounds.size(); i-- > 0;)
      pts += detail::svg_num(x_of(agg.rounds[i])) + "," +
             detail::svg_num(y_of(agg.mean_regret[i] - agg.stderr_regret[i])) + " ";
    s += "<polygon points=\"" + pts + "\" fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
  }

  const auto polyline = [&](const std::vector<double>& ys, const char* style) {
    std::string pts;
    for (std::size_t i = 0; i < agg.rounds.size(); ++i)
      pts += detail::svg_num(x_of(agg.rounds[i])) + "," + detail::svg_num(y_of(ys[i])) + " ";
    return "<polyline points=\"" + pts + "\" fill=\"none\" " + style + "/>\n";
  };
  s += polyline(agg.lower_bound, "stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
  s += polyline(agg.mean_regret, "stroke=\"#1f77b4\" stroke-width=\"2\"");

  // Legend.
  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  s += "<line x1=\"" + detail::svg_num(L + 10) + "\" y1=\"" + detail::svg_num(T + 12) + "\" x2=\"" +
       detail::svg_num(L + 40) + "\" y2=\"" + detail::svg_num(T + 12) +
       "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  s += "<text x=\"" + detail::svg_num(L + 46) + "\" y=\"" + detail::svg_num(T + 16) + "\">mean regret</text>\n";
  s += "<line x1=\"" + detail::svg_num(L + 10) + "\" y1=\"" + detail::svg_num(T + 30) + "\" x2=\"" +
       detail::svg_num(L + 40) + "\" y2=\"" + detail::svg_num(T + 30) +
       "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
  s += "<text x=\"" + detail::svg_num(L + 46) + "\" y=\"" + detail::svg_num(T + 34) +
       "\">C &#183; ln t reference</text>\n";
  s += "</g>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace mtb
