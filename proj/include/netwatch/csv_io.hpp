#pragma once

#include <string>
#include <vector>

#include "netwatch/core.hpp"

namespace netwatch {

/// Reads `t,src,dst,count` (1-based ids, t contiguous from 1). Unlisted pairs
/// are zero; duplicate (t,src,dst) rows are summed.
NetworkSeries parse_series(const std::string& path);

/// Writes the series in the same format, sparse (zero pairs omitted),
/// deterministic row order (t, then src, then dst).
void write_series(const NetworkSeries& series, const std::string& path);

/// Reads `t,src,dst,lambda` into a per-edge mean series sized ton x n per t.
MeanModel parse_means(const std::string& path);

/// Writes `t,statistic,team_or_leader,value,boundary,flagged`.
void write_flags(const std::vector<FlagEvent>& events, const std::string& path);

/// Round-trip reader for the flags format.
std::vector<FlagEvent> read_flags(const std::string& path);

}  // namespace netwatch
