#include "cvrp/tsplib.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cvrp/random.hpp"

namespace cvrp::tsplib {

ParseError::ParseError(const std::string& what, std::size_t line)
    : InputError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

UnsupportedFormat::UnsupportedFormat(std::string keyword, const std::string& value)
    : InputError("unsupported format: " + keyword + " = " + value),
      keyword_(std::move(keyword)) {}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool is_number_token(const std::string& tok) {
  if (tok.empty()) return false;
  const char c = tok.front();
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

// Streams whitespace-separated tokens from a section, tracking line numbers.
// Stops (without consuming) at the first non-numeric token.
class TokenCursor {
 public:
  TokenCursor(const std::vector<std::string>& lines, std::size_t line)
      : lines_(lines), line_(line) {}

  std::optional<std::string> next_number() {
    while (true) {
      if (line_ >= lines_.size()) return std::nullopt;
      if (!current_) {
        current_.emplace(lines_[line_]);
      }
      std::string tok;
      const auto mark = current_->tellg();
      if (*current_ >> tok) {
        if (!is_number_token(tok)) {
          current_->clear();
          current_->seekg(mark);
          return std::nullopt;
        }
        return tok;
      }
      current_.reset();
      ++line_;
    }
  }

  // 1-based line of the cursor, clamped to the last line.
  std::size_t line_number() const { return std::min(line_, lines_.size() - 1) + 1; }

  // Index of the first line not fully consumed.
  std::size_t resume_line() const { return current_ ? line_ + 1 : line_; }

 private:
  const std::vector<std::string>& lines_;
  std::size_t line_;
  std::optional<std::istringstream> current_;
};

EdgeWeightType parse_type(const std::string& v) {
  if (v == "EXPLICIT") return EdgeWeightType::kExplicit;
  if (v == "EUC_2D") return EdgeWeightType::kEuc2d;
  if (v == "GEO") return EdgeWeightType::kGeo;
  throw UnsupportedFormat("EDGE_WEIGHT_TYPE", v);
}

EdgeWeightFormat parse_format(const std::string& v) {
  if (v == "FULL_MATRIX") return EdgeWeightFormat::kFullMatrix;
  if (v == "UPPER_ROW") return EdgeWeightFormat::kUpperRow;
  if (v == "LOWER_ROW") return EdgeWeightFormat::kLowerRow;
  if (v == "UPPER_DIAG_ROW") return EdgeWeightFormat::kUpperDiagRow;
  if (v == "LOWER_DIAG_ROW") return EdgeWeightFormat::kLowerDiagRow;
  throw UnsupportedFormat("EDGE_WEIGHT_FORMAT", v);
}

std::int64_t to_int(const std::string& tok, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc() && ptr == tok.data() + tok.size()) return v;
  // Some files write integral weights with a trailing ".0".
  double d = 0;
  auto [p2, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
  if (ec2 == std::errc() && p2 == tok.data() + tok.size() && d == std::floor(d))
    return static_cast<std::int64_t>(d);
  throw ParseError("expected an integer weight, got '" + tok + "'", line);
}

double to_double(const std::string& tok, std::size_t line) {
  double d = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected a coordinate, got '" + tok + "'", line);
  return d;
}

// Fills the matrix from the packed explicit representation.
void expand(EdgeWeightFormat fmt, std::size_t n, const std::vector<Weight>& packed,
            std::vector<Weight>& m) {
  std::size_t k = 0;
  auto set = [&](std::size_t i, std::size_t j) {
    m[i * n + j] = packed[k];
    m[j * n + i] = packed[k];
    ++k;
  };
  switch (fmt) {
    case EdgeWeightFormat::kFullMatrix:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = packed[k++];
      break;
    case EdgeWeightFormat::kUpperRow:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) set(i, j);
      break;
    case EdgeWeightFormat::kLowerRow:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) set(i, j);
      break;
    case EdgeWeightFormat::kUpperDiagRow:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) set(i, j);
      break;
    case EdgeWeightFormat::kLowerDiagRow:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) set(i, j);
      break;
  }
}

std::size_t packed_size(EdgeWeightFormat fmt, std::size_t n) {
  switch (fmt) {
    case EdgeWeightFormat::kFullMatrix:
      return n * n;
    case EdgeWeightFormat::kUpperRow:
    case EdgeWeightFormat::kLowerRow:
      return n * (n - 1) / 2;
    case EdgeWeightFormat::kUpperDiagRow:
    case EdgeWeightFormat::kLowerDiagRow:
      return n * (n + 1) / 2;
  }
  return 0;
}

}  // namespace

std::int64_t nint(double x) { return static_cast<std::int64_t>(std::floor(x + 0.5)); }

Weight euc2d_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return nint(std::sqrt(dx * dx + dy * dy));
}

Weight geo_distance(Point a, Point b) {
  // Reference constants; PI is deliberately truncated.
  constexpr double kPi = 3.141592;
  constexpr double kEarthRadius = 6378.388;
  auto radians = [&](double v) {
    const double deg = std::trunc(v);
    const double min = v - deg;
    return kPi * (deg + 5.0 * min / 3.0) / 180.0;
  };
  const double lat_a = radians(a.x), lon_a = radians(a.y);
  const double lat_b = radians(b.x), lon_b = radians(b.y);
  const double q1 = std::cos(lon_a - lon_b);
  const double q2 = std::cos(lat_a - lat_b);
  const double q3 = std::cos(lat_a + lat_b);
  return static_cast<Weight>(
      kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

std::pair<Header, Instance> parse_with_header(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  if (lines.empty()) throw ParseError("empty input", 0);

  Header header;
  bool have_dimension = false;
  bool have_type = false;
  std::vector<Weight> packed;
  std::vector<Point> coords;
  bool have_weights = false;
  bool have_coords = false;

  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string line = trim(lines[i]);
    if (line.empty()) {
      ++i;
      continue;
    }
    std::string key, value;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      key = upper(trim(line.substr(0, colon)));
      value = trim(line.substr(colon + 1));
    } else {
      std::istringstream ss(line);
      ss >> key;
      key = upper(key);
      std::getline(ss, value);
      value = trim(value);
    }

    if (key == "EOF") break;
    if (key == "NAME") {
      header.name = value;
    } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE" || key == "NODE_COORD_TYPE") {
      // informational
    } else if (key == "TYPE") {
      header.type = upper(value);
      if (header.type != "TSP") throw UnsupportedFormat("TYPE", header.type);
    } else if (key == "DIMENSION") {
      const auto d = to_int(value, i + 1);
      if (d < 2) throw ParseError("DIMENSION must be at least 2", i + 1);
      header.dimension = static_cast<std::size_t>(d);
      have_dimension = true;
    } else if (key == "EDGE_WEIGHT_TYPE") {
      header.edge_weight_type = parse_type(upper(value));
      have_type = true;
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      // FUNCTION just says weights come from coordinates.
      if (upper(value) != "FUNCTION") header.edge_weight_format = parse_format(upper(value));
    } else if (key == "EDGE_WEIGHT_SECTION") {
      if (!have_dimension) throw ParseError("EDGE_WEIGHT_SECTION before DIMENSION", i + 1);
      if (!header.edge_weight_format)
        throw ParseError("EDGE_WEIGHT_SECTION without EDGE_WEIGHT_FORMAT", i + 1);
      const std::size_t want = packed_size(*header.edge_weight_format, header.dimension);
      TokenCursor cur(lines, i + 1);
      packed.reserve(want);
      while (packed.size() < want) {
        auto tok = cur.next_number();
        if (!tok)
          throw ParseError("EDGE_WEIGHT_SECTION truncated after " +
                               std::to_string(packed.size()) + " of " +
                               std::to_string(want) + " values",
                           cur.line_number());
        packed.push_back(to_int(*tok, cur.line_number()));
      }
      have_weights = true;
      i = cur.resume_line();
      continue;
    } else if (key == "NODE_COORD_SECTION") {
      if (!have_dimension) throw ParseError("NODE_COORD_SECTION before DIMENSION", i + 1);
      coords.assign(header.dimension, Point{});
      TokenCursor cur(lines, i + 1);
      for (std::size_t k = 0; k < header.dimension; ++k) {
        std::array<std::string, 3> toks;
        for (auto& t : toks) {
          auto tok = cur.next_number();
          if (!tok)
            throw ParseError("NODE_COORD_SECTION truncated after " + std::to_string(k) +
                                 " of " + std::to_string(header.dimension) + " nodes",
                             cur.line_number());
          t = *tok;
        }
        const auto id = to_int(toks[0], cur.line_number());
        if (id < 1 || static_cast<std::size_t>(id) > header.dimension)
          throw ParseError("node id " + toks[0] + " out of range", cur.line_number());
        coords[static_cast<std::size_t>(id - 1)] =
            Point{to_double(toks[1], cur.line_number()), to_double(toks[2], cur.line_number())};
      }
      have_coords = true;
      i = cur.resume_line();
      continue;
    } else if (key == "DISPLAY_DATA_SECTION") {
      ++i;
      while (i < lines.size()) {
        const std::string l = trim(lines[i]);
        if (!l.empty() && !is_number_token(l.substr(0, l.find_first_of(" \t")))) break;
        ++i;
      }
      continue;
    } else if (key.size() > 8 && key.ends_with("_SECTION")) {
      throw UnsupportedFormat(key, "present");
    } else {
      throw UnsupportedFormat(key, value);
    }
    ++i;
  }

  if (!have_dimension) throw ParseError("missing DIMENSION", 0);
  if (!have_type) throw ParseError("missing EDGE_WEIGHT_TYPE", 0);
  const bool is_explicit = header.edge_weight_type == EdgeWeightType::kExplicit;
  if (is_explicit != header.edge_weight_format.has_value())
    throw ParseError("EDGE_WEIGHT_FORMAT must be given exactly when EDGE_WEIGHT_TYPE is EXPLICIT",
                     0);

  const std::size_t n = header.dimension;
  std::vector<Weight> m(n * n, 0);
  if (is_explicit) {
    if (!have_weights) throw ParseError("missing EDGE_WEIGHT_SECTION", 0);
    expand(*header.edge_weight_format, n, packed, m);
  } else {
    if (!have_coords) throw ParseError("missing NODE_COORD_SECTION", 0);
    const bool geo = header.edge_weight_type == EdgeWeightType::kGeo;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const Weight d = geo ? geo_distance(coords[a], coords[b])
                             : euc2d_distance(coords[a], coords[b]);
        m[a * n + b] = m[b * n + a] = d;
      }
  }
  for (std::size_t a = 0; a < n; ++a) m[a * n + a] = 0;
  Instance inst(header.name, n, std::move(m));
  return {std::move(header), std::move(inst)};
}

Instance parse(std::istream& in) { return parse_with_header(in).second; }

Instance parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

Instance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse(in);
}

std::vector<Point> random_points(std::size_t num_vertices, std::uint64_t seed,
                                 std::int64_t coord_bound) {
  if (num_vertices < 2) throw InputError("random instance needs at least 2 vertices");
  if (coord_bound < 1) throw InputError("coord_bound must be positive");
  Rng rng(derive_seed(seed, {num_vertices}));
  std::vector<Point> pts(num_vertices);
  const auto span = static_cast<std::uint64_t>(coord_bound) + 1;
  for (auto& p : pts) {
    p.x = static_cast<double>(rng.below(span));
    p.y = static_cast<double>(rng.below(span));
  }
  return pts;
}

Instance instance_from_points(std::string name, const std::vector<Point>& points) {
  const std::size_t n = points.size();
  std::vector<Weight> m(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      m[a * n + b] = m[b * n + a] = euc2d_distance(points[a], points[b]);
  return Instance(std::move(name), n, std::move(m));
}

Instance generate_random_instance(std::size_t num_vertices, std::uint64_t seed,
                                  std::int64_t coord_bound) {
  return instance_from_points("rand" + std::to_string(num_vertices) + "_s" + std::to_string(seed),
                              random_points(num_vertices, seed, coord_bound));
}

void write_euc2d(std::ostream& out, const std::string& name,
                 const std::vector<Point>& points) {
  out << "NAME : " << name << "\nTYPE : TSP\nDIMENSION : " << points.size()
      << "\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n";
  for (std::size_t k = 0; k < points.size(); ++k)
    out << k + 1 << ' ' << static_cast<std::int64_t>(points[k].x) << ' '
        << static_cast<std::int64_t>(points[k].y) << '\n';
  out << "EOF\n";
}

void write_full_matrix(std::ostream& out, const Instance& inst) {
  const std::size_t n = inst.size();
  out << "NAME : " << inst.name() << "\nTYPE : TSP\nDIMENSION : " << n
      << "\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : FULL_MATRIX\nEDGE_WEIGHT_SECTION\n";
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << inst.w(a, b);
    out << '\n';
  }
  out << "EOF\n";
}

}  // namespace cvrp::tsplib
