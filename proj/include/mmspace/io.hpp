#pragma once

// Text formats shared by the CLI and the generators.
//
// Space file: whitespace-separated tokens, `#` starts a comment that runs to
// the end of the line. A token ending in ':' starts a field; every token up
// to the next field belongs to it.
//
//   labels: a b c          # n distinct labels, none ending in ':'
//   dist:                  # n*n numbers, row-major
//     0 1 2
//     1 0 1
//     2 1 0
//   mass: 1/3 1/3 1/3      # optional, n numbers
//   coords: 0 0  2 1/2 ... # optional, n planar (x, y) pairs
//
// Numbers are decimal literals (`0.25`, `-3`, `1e-2`) or fractions (`1/3`),
// read exactly. The writer emits terminating decimals where possible and
// fractions otherwise, so write -> read is lossless.
//
// Certificate file:
//
//   shape: 2 2             # |X| |Y|
//   pi: 1/2 0 0 1/2        # |X|*|Y| numbers, row-major
//   S: 0 0  1 1            # index pairs (x y), possibly none
//   claimed_value: 0.2     # claimed max{1 - pi(S), dis S}
//   epsilon_bound: 8       # optional: an analytic bound the claim sits under

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmspace/space.hpp"

namespace mmspace {

using Point2 = std::pair<Rational, Rational>;

struct SpaceFile {
  SpaceData data;
  std::optional<std::vector<Point2>> coords;
};

SpaceFile parse_space(std::string_view text);
SpaceFile read_space_file(const std::string& path);
std::string format_space(const SpaceFile& file);

struct Certificate {
  Coupling pi;
  Relation S;
  Rational claimed_value;
  std::optional<Rational> epsilon_bound;
};

Certificate parse_certificate(std::string_view text);
Certificate read_certificate_file(const std::string& path);
std::string format_certificate(const Certificate& cert);

/// Parses "0.2,0.3,1/2" (commas and/or whitespace) into rationals.
std::vector<Rational> parse_number_list(std::string_view text);

/// Parses "0 1; 2 3" or "0,1 2,3" into a Relation (indices taken pairwise).
Relation parse_relation(std::string_view text);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace mmspace
