#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kdeplex {

// Input violates a documented precondition (bad sample, bad config).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A fit or statistic is undefined for the given data (zero variance,
// vanishing conditional probability, ...).
class DegenerateData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One-dimensional search whose optimum sits on the edge of the search range.
class SearchBoundaryError : public std::runtime_error {
public:
    SearchBoundaryError(const std::string& what, double location, double lower, double upper)
        : std::runtime_error(what), location_(location), lower_(lower), upper_(upper) {}

    double location() const noexcept { return location_; }
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double location_;
    double lower_;
    double upper_;
};

struct TracePoint {
    double iterate;
    double objective;
};

// Iterative solver failed; carries everything it visited.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<TracePoint> trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}

    const std::vector<TracePoint>& trace() const noexcept { return trace_; }

private:
    std::vector<TracePoint> trace_;
};

// Malformed input file. row() is 1-based and counts the header line, 0 when
// the problem is not tied to a row.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row)
        : std::runtime_error(row == 0 ? what : "row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

} // namespace kdeplex
