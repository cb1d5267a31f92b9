#pragma once

#include <string>
#include <vector>

namespace chaoslab {

// Minimal self-contained SVG line plots: axes, ticks, optional log-log scales
// and error bars. No external assets.
class SvgPlot {
public:
    SvgPlot(int width = 720, int height = 480) : width_(width), height_(height) {}

    void set_title(const std::string& t) { title_ = t; }
    void set_axis_labels(const std::string& x, const std::string& y) {
        xlabel_ = x;
        ylabel_ = y;
    }
    void set_loglog(bool on) { loglog_ = on; }

    struct Series {
        std::vector<double> x, y, yerr; // yerr may be empty
        std::string color = "#1f6fb2";
        std::string label;
        bool points = true;
    };
    void add_series(Series s) { series_.push_back(std::move(s)); }

    std::string render() const;

private:
    int width_, height_;
    std::string title_, xlabel_, ylabel_;
    bool loglog_ = false;
    std::vector<Series> series_;
};

} // namespace chaoslab
