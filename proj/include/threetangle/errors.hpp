#pragma once

#include <stdexcept>
#include <string>

namespace threetangle {

struct ZeroState : std::runtime_error {
    explicit ZeroState(const std::string& what) : std::runtime_error(what) {}
};

struct WrongArity : std::runtime_error {
    explicit WrongArity(const std::string& what) : std::runtime_error(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct RankExceeded : std::runtime_error {
    explicit RankExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct BadGrid : std::invalid_argument {
    explicit BadGrid(const std::string& what) : std::invalid_argument(what) {}
};

// tau3 vanishes identically on the span of the mixture; the roof is 0.
struct DegenerateMeasure : std::runtime_error {
    explicit DegenerateMeasure(const std::string& what) : std::runtime_error(what) {}
};

struct ArityError : std::invalid_argument {
    explicit ArityError(const std::string& what) : std::invalid_argument(what) {}
};

struct NoPrintedData : std::runtime_error {
    explicit NoPrintedData(const std::string& what) : std::runtime_error(what) {}
};

} // namespace threetangle
