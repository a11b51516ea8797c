#pragma once

#include <stdexcept>
#include <string>

namespace netwatch {

/// Base for all validation / domain errors raised by the library.
/// CLI maps these to exit code 1; I/O failures map to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define NETWATCH_ERROR(Name)                                        \
    struct Name : Error {                                           \
        explicit Name(const std::string& msg) : Error(msg) {}       \
    }

NETWATCH_ERROR(DimensionMismatch);
NETWATCH_ERROR(NonPositiveMean);
NETWATCH_ERROR(NonContiguousTime);
NETWATCH_ERROR(BadAlpha);
NETWATCH_ERROR(TimeSkew);
NETWATCH_ERROR(EmptyTeam);
NETWATCH_ERROR(LeaderInTeam);
NETWATCH_ERROR(OmegaNotSubset);
NETWATCH_ERROR(NegativeInput);
NETWATCH_ERROR(BadK);
NETWATCH_ERROR(BadSimId);
NETWATCH_ERROR(SurrogateMissing);
NETWATCH_ERROR(SurrogateKindMismatch);
NETWATCH_ERROR(RankDeficient);
NETWATCH_ERROR(TooFewSamples);
NETWATCH_ERROR(NonPositivePrediction);
NETWATCH_ERROR(ZeroReps);
NETWATCH_ERROR(InvalidHorizon);
NETWATCH_ERROR(NoBracket);
NETWATCH_ERROR(BudgetExhausted);
NETWATCH_ERROR(NoChangePoint);
NETWATCH_ERROR(NegativeCount);
NETWATCH_ERROR(EmptySeries);
NETWATCH_ERROR(BadPlan);

struct ParseError : Error {
    long line = 0;
    ParseError(const std::string& msg, long line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

#undef NETWATCH_ERROR

}  // namespace netwatch
