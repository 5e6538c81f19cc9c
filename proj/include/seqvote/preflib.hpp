#pragma once

#include "seqvote/types.hpp"

namespace seqvote {

// Malformed input; `line` is 1-based, 0 when no specific line applies.
class ParseError : public UsageError {
 public:
  ParseError(int line, const std::string& what)
      : UsageError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses a classic Preflib election file (soc/soi/toc/toi). Tied groups
// {a,b} become mutually incomparable alternatives; unranked alternatives stay
// incomparable to everything. Lines starting with '#' are ignored. Header
// counts (sum of votes, number of unique orders) are validated.
Profile parse_preflib(const std::string& text);

// Serializes a unit-weight profile back to the classic format; identical
// orders are merged into one line. Orders must be layer-representable
// (a ranked chain of mutually-incomparable groups, optionally followed by
// fully unranked alternatives); others raise UsageError.
std::string write_preflib(const Profile& profile);

// Agenda text: each line is a chain of labels separated by '>'; lines combine
// into one partial order. Unknown labels and cycles raise errors.
PartialAgenda parse_agenda(const std::string& text, const Profile& profile);

}  // namespace seqvote
