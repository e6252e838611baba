#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tropline/ensembles.hpp"
#include "tropline/metric.hpp"
#include "tropline/segment.hpp"
#include "tropline/tree.hpp"

namespace tropline {

/// Vector format: the leaf count n, then C(n,2) numbers in lexicographic pair
/// order, all whitespace separated. Lines starting with '#' are ignored.
UltraVector parse_ultra_vector(std::string_view text);
std::string write_ultra_vector(const UltraVector& u);

/// Newick when the first significant character is '(', vector format
/// otherwise. Newick input is converted to its ultrametric.
UltraVector parse_metric(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

nlohmann::ordered_json scalar_json(const ExactScalar& x, bool decimal);
nlohmann::ordered_json vector_json(const UltraVector& u, bool decimal);
nlohmann::ordered_json topology_json(const Topology& t);

/// Endpoints, genericity, and one record per turning point (lambda, canonical
/// point, class, witness vertices as clades, Newick), plus piece topologies.
nlohmann::ordered_json segment_json(const TropicalSegment& segment, bool decimal);

inline constexpr std::string_view kExperimentCsvHeader = "n,trials,mean_pi,var,ci99,bound,seconds";

std::string experiment_csv(const std::vector<ExperimentReport>& reports);
nlohmann::ordered_json experiment_json(const std::vector<ExperimentReport>& reports);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace tropline
