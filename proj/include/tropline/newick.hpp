#pragma once

#include <string>
#include <string_view>

#include "tropline/tree.hpp"

namespace tropline {

/// Parses a rooted Newick tree with positive integer leaf labels and branch
/// lengths on every non-root edge (integer, decimal, or `p/q`). Leaves must
/// be equidistant from the root, exactly. Internal edges must be positive.
/// Throws ParseError on bad syntax and InvalidTree on bad geometry.
EquidistantTree parse_newick(std::string_view text);

/// Canonical Newick: children ordered by smallest leaf, rational branch
/// lengths, no root length. parse_newick(write_newick(t)) == t.
std::string write_newick(const EquidistantTree& t);

}  // namespace tropline
