#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netanon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input line in an edge list or CSV file; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A neighborhood exceeded the canonical-labeling node ceiling.
class NeighborhoodTooLarge : public Error {
 public:
  NeighborhoodTooLarge(std::size_t nodes, std::size_t limit)
      : Error("neighborhood too large for canonical labeling: " +
              std::to_string(nodes) + " nodes (limit " + std::to_string(limit) +
              ")"),
        nodes_(nodes),
        limit_(limit) {}

  std::size_t nodes() const { return nodes_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t nodes_;
  std::size_t limit_;
};

// Two partitions or graphs cover different node universes.
class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

// A cooperative wall-clock budget expired mid-computation.
class DeadlineExceeded : public Error {
 public:
  DeadlineExceeded() : Error("wall-clock budget exceeded") {}
};

}  // namespace netanon
