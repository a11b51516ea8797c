#pragma once

#include <string>
#include <vector>

namespace netwatch {

/// One charted time point: the two one-sided statistics and their limits.
struct ChartPoint {
    int t = 0;
    double upper = 0.0;        // upper statistic (GEWMA)
    double lower = 0.0;        // lower statistic (L-GEWMA)
    double upper_limit = 0.0;  // flag boundary for the upper chart
    double lower_limit = 0.0;  // flag boundary for the lower chart
};

/// Standalone SVG with one polyline per statistic and dashed control limits.
/// Byte-deterministic for identical input.
std::string render_chart_svg(const std::vector<ChartPoint>& points);

void render_chart(const std::vector<ChartPoint>& points, const std::string& path);

}  // namespace netwatch
