#include "svgplot.hpp"

#include "config.hpp"
#include "qthermo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace qthermo::cli {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 560.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '&') {
            out += "&amp;";
        } else if (c == '<') {
            out += "&lt;";
        } else if (c == '>') {
            out += "&gt;";
        } else {
            out += c;
        }
    }
    return out;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    if (v == 0.0) v = 0.0; // collapse -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(double lo, double hi) {
    const double span = hi - lo;
    const double pad = span > 0.0 ? 0.05 * span : std::max(0.05 * std::abs(lo), 0.5);
    return {lo - pad, hi + pad};
}

Range data_range(const std::vector<Series>& series, bool use_x) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series) {
        const auto& vs = use_x ? s.xs : s.ys;
        for (double v : vs) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo <= hi)) throw NumericalError("no finite samples to plot");
    return padded_range(lo, hi);
}

double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double mult = 10.0;
    if (norm < 1.5) {
        mult = 1.0;
    } else if (norm < 3.5) {
        mult = 2.0;
    } else if (norm < 7.5) {
        mult = 5.0;
    }
    return mult * mag;
}

std::vector<double> ticks(const Range& r) {
    const double step = nice_step(r.hi - r.lo);
    std::vector<double> out;
    double v = std::ceil(r.lo / step) * step;
    while (v <= r.hi + 1e-9 * step) {
        out.push_back(v);
        v += step;
    }
    return out;
}

struct Frame {
    double x0, y0, w, h;
    Range xr, yr;

    double X(double v) const { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * w; }
    double Y(double v) const { return y0 + h - (v - yr.lo) / (yr.hi - yr.lo) * h; }
};

void draw_frame(std::ofstream& out, const Frame& f, const std::string& title,
                const std::string& xlabel, const std::string& ylabel) {
    for (double t : ticks(f.xr)) {
        const std::string x = px(f.X(t));
        out << "<line x1=\"" << x << "\" y1=\"" << px(f.y0) << "\" x2=\"" << x << "\" y2=\""
            << px(f.y0 + f.h) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << px(f.y0 + f.h + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    for (double t : ticks(f.yr)) {
        const std::string y = px(f.Y(t));
        out << "<line x1=\"" << px(f.x0) << "\" y1=\"" << y << "\" x2=\"" << px(f.x0 + f.w)
            << "\" y2=\"" << y << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(f.x0 - 6) << "\" y=\"" << px(f.Y(t) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    out << "<rect x=\"" << px(f.x0) << "\" y=\"" << px(f.y0) << "\" width=\"" << px(f.w)
        << "\" height=\"" << px(f.h)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << px(f.x0 + f.w / 2) << "\" y=\"24\" font-size=\"14\" "
        << "text-anchor=\"middle\" font-weight=\"bold\">" << xml_escape(title) << "</text>\n";
    out << "<text x=\"" << px(f.x0 + f.w / 2) << "\" y=\"" << px(kHeight - 12)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << xml_escape(xlabel) << "</text>\n";
    out << "<text transform=\"translate(16," << px(f.y0 + f.h / 2)
        << ") rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">" << xml_escape(ylabel)
        << "</text>\n";
}

void open_svg(std::ofstream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";
}

} // namespace

void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series) {
    if (series.empty()) throw NumericalError("no series to plot");
    for (const auto& s : series) {
        if (s.xs.size() != s.ys.size()) {
            throw NumericalError("series '" + s.name + "' has mismatched x/y lengths");
        }
    }
    Frame f{70.0, 44.0, kWidth - 70.0 - 26.0, kHeight - 44.0 - 54.0,
            data_range(series, true), data_range(series, false)};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write SVG file: " + path);
    open_svg(out);
    draw_frame(out, f, title, xlabel, ylabel);

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        std::string points;
        std::size_t run = 0;
        auto flush = [&]() {
            if (run >= 2) {
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.8\" points=\"" << points << "\"/>\n";
            }
            points.clear();
            run = 0;
        };
        for (std::size_t k = 0; k < series[i].xs.size(); ++k) {
            const double xv = series[i].xs[k];
            const double yv = series[i].ys[k];
            if (!std::isfinite(xv) || !std::isfinite(yv)) {
                flush();
                continue;
            }
            if (run) points += ' ';
            points += px(f.X(xv)) + "," + px(f.Y(yv));
            ++run;
        }
        flush();
    }

    std::size_t longest = 0;
    for (const auto& s : series) longest = std::max(longest, s.name.size());
    const double box_w = 40.0 + 7.0 * static_cast<double>(longest);
    const double box_h = 8.0 + 17.0 * static_cast<double>(series.size());
    const double bx = f.x0 + f.w - box_w - 8.0;
    const double by = f.y0 + 8.0;
    out << "<rect x=\"" << px(bx) << "\" y=\"" << px(by) << "\" width=\"" << px(box_w)
        << "\" height=\"" << px(box_h)
        << "\" fill=\"#ffffff\" fill-opacity=\"0.85\" stroke=\"#999999\"/>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double ly = by + 14.0 + 17.0 * static_cast<double>(i);
        out << "<line x1=\"" << px(bx + 6) << "\" y1=\"" << px(ly - 4) << "\" x2=\""
            << px(bx + 26) << "\" y2=\"" << px(ly - 4) << "\" stroke=\""
            << kPalette[i % kPaletteSize] << "\" stroke-width=\"2.5\"/>\n";
        out << "<text x=\"" << px(bx + 32) << "\" y=\"" << px(ly)
            << "\" font-size=\"12\">" << xml_escape(series[i].name) << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw ConfigError("write failed: " + path);
}

namespace {

struct Rgb {
    double r, g, b;
};

// plasma-like sequential ramp
const Rgb kStops[] = {{13, 8, 135}, {126, 3, 168}, {204, 71, 120}, {248, 148, 65}, {240, 249, 33}};

std::string ramp_color(double u) {
    u = std::clamp(u, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(u));
    const double w = u - i;
    auto mix = [&](double a, double b) { return a + (b - a) * w; };
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(mix(kStops[i].r, kStops[i + 1].r))),
                  static_cast<int>(std::lround(mix(kStops[i].g, kStops[i + 1].g))),
                  static_cast<int>(std::lround(mix(kStops[i].b, kStops[i + 1].b))));
    return buf;
}

} // namespace

void write_svg_heatmap(const std::string& path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::vector<std::vector<double>>& values) {
    const std::size_t nx = xs.size(), ny = ys.size();
    if (nx < 2 || ny < 2 || values.size() != ny) {
        throw NumericalError("heatmap grid is degenerate");
    }
    for (const auto& row : values) {
        if (row.size() != nx) throw NumericalError("heatmap row width mismatch");
    }

    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (const auto& row : values) {
        for (double v : row) {
            if (!std::isfinite(v)) continue;
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    }
    if (!(vmin <= vmax)) throw NumericalError("no finite samples to plot");
    const double vspan = vmax > vmin ? vmax - vmin : 1.0;

    Frame f{70.0, 44.0, kWidth - 70.0 - 96.0, kHeight - 44.0 - 54.0,
            padded_range(xs.front(), xs.back()), padded_range(ys.front(), ys.back())};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write SVG file: " + path);
    open_svg(out);

    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = values[iy][ix];
            const std::string color =
                std::isfinite(v) ? ramp_color((v - vmin) / vspan) : std::string("#c8c8c8");
            // cell centered on its grid point, edges clipped by the frame
            const double xl = ix == 0 ? xs[0] : 0.5 * (xs[ix - 1] + xs[ix]);
            const double xrgt = ix + 1 == nx ? xs[nx - 1] : 0.5 * (xs[ix] + xs[ix + 1]);
            const double yl = iy == 0 ? ys[0] : 0.5 * (ys[iy - 1] + ys[iy]);
            const double yh = iy + 1 == ny ? ys[ny - 1] : 0.5 * (ys[iy] + ys[iy + 1]);
            out << "<rect x=\"" << px(f.X(xl)) << "\" y=\"" << px(f.Y(yh)) << "\" width=\""
                << px(f.X(xrgt) - f.X(xl) + 0.3) << "\" height=\"" << px(f.Y(yl) - f.Y(yh) + 0.3)
                << "\" fill=\"" << color << "\"/>\n";
        }
    }
    draw_frame(out, f, title, xlabel, ylabel);

    const double bar_x = f.x0 + f.w + 22.0;
    const int bar_steps = 64;
    for (int k = 0; k < bar_steps; ++k) {
        const double u0 = static_cast<double>(k) / bar_steps;
        const double y_top = f.y0 + f.h * (1.0 - static_cast<double>(k + 1) / bar_steps);
        out << "<rect x=\"" << px(bar_x) << "\" y=\"" << px(y_top) << "\" width=\"14\" height=\""
            << px(f.h / bar_steps + 0.3) << "\" fill=\"" << ramp_color(u0 + 0.5 / bar_steps)
            << "\"/>\n";
    }
    out << "<rect x=\"" << px(bar_x) << "\" y=\"" << px(f.y0) << "\" width=\"14\" height=\""
        << px(f.h) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << px(bar_x + 18) << "\" y=\"" << px(f.y0 + 10)
        << "\" font-size=\"11\">" << tick_label(vmax) << "</text>\n";
    out << "<text x=\"" << px(bar_x + 18) << "\" y=\"" << px(f.y0 + f.h)
        << "\" font-size=\"11\">" << tick_label(vmin) << "</text>\n";
    out << "</svg>\n";
    if (!out) throw ConfigError("write failed: " + path);
}

} // namespace qthermo::cli
