#include "chaoslab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace chaoslab {

namespace {
double tick_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step = 10.0;
    if (frac <= 1.5)
        step = 1.0;
    else if (frac <= 3.5)
        step = 2.0;
    else if (frac <= 7.5)
        step = 5.0;
    return step * mag;
}
} // namespace

std::string SvgPlot::render() const {
    const int ml = 64, mr = 16, mt = title_.empty() ? 16 : 36, mb = 48;
    const double pw = width_ - ml - mr, ph = height_ - mt - mb;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto txf = [&](double v) { return loglog_ ? std::log10(v) : v; };
    for (const auto& s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (loglog_ && (s.x[i] <= 0.0 || s.y[i] <= 0.0))
                throw std::invalid_argument("SvgPlot: log-log requires positive data");
            xmin = std::min(xmin, txf(s.x[i]));
            xmax = std::max(xmax, txf(s.x[i]));
            double lo = s.y[i], hi = s.y[i];
            if (!s.yerr.empty()) {
                lo -= s.yerr[i];
                hi += s.yerr[i];
                if (loglog_) lo = std::max(lo, s.y[i] * 0.5);
            }
            ymin = std::min(ymin, txf(lo));
            ymax = std::max(ymax, txf(hi));
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;
    auto px = [&](double v) { return ml + (txf(v) - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return mt + ph - (txf(v) - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width_ << "' height='" << height_
        << "' viewBox='0 0 " << width_ << ' ' << height_ << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    if (!title_.empty())
        svg << "<text x='" << width_ / 2 << "' y='20' text-anchor='middle' font-size='14'>"
            << title_ << "</text>\n";
    // frame
    svg << "<rect x='" << ml << "' y='" << mt << "' width='" << pw << "' height='" << ph
        << "' fill='none' stroke='#333'/>\n";
    // ticks
    const double xstep = tick_step(xmax - xmin), ystep = tick_step(ymax - ymin);
    for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-12; t += xstep) {
        const double x = ml + (t - xmin) / (xmax - xmin) * pw;
        svg << "<line x1='" << x << "' y1='" << mt + ph << "' x2='" << x << "' y2='" << mt + ph + 4
            << "' stroke='#333'/>\n";
        std::ostringstream lbl;
        lbl.precision(3);
        lbl << (loglog_ ? std::pow(10.0, t) : t);
        svg << "<text x='" << x << "' y='" << mt + ph + 18 << "' text-anchor='middle' font-size='11'>"
            << lbl.str() << "</text>\n";
    }
    for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-12; t += ystep) {
        const double y = mt + ph - (t - ymin) / (ymax - ymin) * ph;
        svg << "<line x1='" << ml - 4 << "' y1='" << y << "' x2='" << ml << "' y2='" << y
            << "' stroke='#333'/>\n";
        std::ostringstream lbl;
        lbl.precision(3);
        lbl << (loglog_ ? std::pow(10.0, t) : t);
        svg << "<text x='" << ml - 8 << "' y='" << y + 4 << "' text-anchor='end' font-size='11'>"
            << lbl.str() << "</text>\n";
    }
    if (!xlabel_.empty())
        svg << "<text x='" << ml + pw / 2 << "' y='" << height_ - 8
            << "' text-anchor='middle' font-size='12'>" << xlabel_ << "</text>\n";
    if (!ylabel_.empty())
        svg << "<text x='14' y='" << mt + ph / 2 << "' text-anchor='middle' font-size='12' "
            << "transform='rotate(-90 14 " << mt + ph / 2 << ")'>" << ylabel_ << "</text>\n";
    int legend_y = mt + 14;
    for (const auto& s : series_) {
        // error bars
        if (!s.yerr.empty()) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                const double x = px(s.x[i]);
                double lo = s.y[i] - s.yerr[i];
                if (loglog_) lo = std::max(lo, s.y[i] * 0.5);
                svg << "<line x1='" << x << "' y1='" << py(lo) << "' x2='" << x << "' y2='"
                    << py(s.y[i] + s.yerr[i]) << "' stroke='" << s.color << "' stroke-width='1'/>\n";
            }
        }
        svg << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        svg << "'/>\n";
        if (s.points)
            for (std::size_t i = 0; i < s.x.size(); ++i)
                svg << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i]) << "' r='2.4' fill='"
                    << s.color << "'/>\n";
        if (!s.label.empty()) {
            svg << "<rect x='" << ml + 10 << "' y='" << legend_y - 8 << "' width='14' height='3' fill='"
                << s.color << "'/>\n";
            svg << "<text x='" << ml + 30 << "' y='" << legend_y - 3 << "' font-size='11'>" << s.label
                << "</text>\n";
            legend_y += 16;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace chaoslab
