#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvrp/graph.hpp"

namespace cvrp::tsplib {

enum class EdgeWeightType { kExplicit, kEuc2d, kGeo };
enum class EdgeWeightFormat { kFullMatrix, kUpperRow, kLowerRow, kUpperDiagRow, kLowerDiagRow };

struct Header {
  std::string name;
  std::string type = "TSP";
  std::size_t dimension = 0;
  EdgeWeightType edge_weight_type = EdgeWeightType::kExplicit;
  std::optional<EdgeWeightFormat> edge_weight_format;
};

/// Malformed file contents. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A well-formed file that uses a keyword value this parser does not handle.
class UnsupportedFormat : public InputError {
 public:
  UnsupportedFormat(std::string keyword, const std::string& value);
  const std::string& keyword() const { return keyword_; }

 private:
  std::string keyword_;
};

struct Point {
  double x = 0;
  double y = 0;
};

Instance parse(std::istream& in);
Instance parse(std::string_view text);
Instance load(const std::string& path);

/// Also returns the parsed header; used by the CLI for reporting.
std::pair<Header, Instance> parse_with_header(std::istream& in);

/// TSPLIB nint(): round half up toward +inf, as used by the reference code.
std::int64_t nint(double x);
Weight euc2d_distance(Point a, Point b);
/// Geographical distance; coordinates are DDD.MM (degrees.minutes).
Weight geo_distance(Point a, Point b);

/// Uniform integer points in [0, coord_bound]^2 with EUC_2D weights.
std::vector<Point> random_points(std::size_t num_vertices, std::uint64_t seed,
                                 std::int64_t coord_bound);
Instance instance_from_points(std::string name, const std::vector<Point>& points);
Instance generate_random_instance(std::size_t num_vertices, std::uint64_t seed,
                                  std::int64_t coord_bound);

/// Writes an EUC_2D file with a NODE_COORD_SECTION.
void write_euc2d(std::ostream& out, const std::string& name,
                 const std::vector<Point>& points);
/// Writes an EXPLICIT FULL_MATRIX file.
void write_full_matrix(std::ostream& out, const Instance& inst);

}  // namespace cvrp::tsplib
