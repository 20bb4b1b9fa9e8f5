#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "locset/anchor_geometry.hpp"
#include "locset/format.hpp"
#include "locset/measurement.hpp"

namespace locset {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Plain-text scenario document. Grammar (one statement per line, '#'
/// starts a comment, blank lines ignored):
///
///   dim <n>                     required, before `anchors`
///   anchors <m>                 required; the next m non-comment lines
///     <x_1> ... <x_n>           are anchor coordinate rows
///   pool                        optional flag: anchors form a candidate pool
///   target <x_1> ... <x_n>      optional
///   delta <d>                   optional, nonnegative
///   xi_lower <v_1> ... <v_m>    optional, paired with xi_upper
///   xi_upper <v_1> ... <v_m>
///   seed <u64>                  optional
///
/// Certification commands need either (target, delta) or the explicit
/// interval vectors.
struct Scenario {
  int dim = 0;
  Eigen::MatrixXd anchors;  // n x m
  bool pool = false;
  std::optional<Eigen::VectorXd> target;
  std::optional<double> delta;
  std::optional<Eigen::VectorXd> xi_lower;
  std::optional<Eigen::VectorXd> xi_upper;
  std::optional<std::uint64_t> seed;

  AnchorSet anchor_set() const { return AnchorSet(anchors); }

  bool has_measurements() const {
    return (target && delta) || (xi_lower && xi_upper);
  }

  /// Interval bounds from explicit vectors when present, else generated
  /// from (target, delta).
  IntervalBounds bounds() const {
    if (xi_lower && xi_upper) return IntervalBounds(*xi_lower, *xi_upper);
    if (target && delta) return make_intervals(*target, anchor_set(), *delta);
    throw ScenarioError(
        "scenario has neither (target, delta) nor explicit xi_lower/xi_upper");
  }
};

namespace detail {

inline std::vector<std::string> scenario_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

inline double parse_double(const std::string& tok, int line_no) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ScenarioError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
  if (used != tok.size())
    throw ScenarioError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  return value;
}

}  // namespace detail

inline Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  bool have_dim = false, have_anchors = false;
  int pending_anchor_rows = 0;
  Eigen::Index next_anchor = 0;
  std::string line;
  int line_no = 0;

  const auto read_vector = [&](const std::vector<std::string>& tokens,
                               Eigen::Index want, const char* what) {
    if (static_cast<Eigen::Index>(tokens.size()) - 1 != want)
      throw ScenarioError("line " + std::to_string(line_no) + ": " + what +
                          " expects " + std::to_string(want) + " values");
    Eigen::VectorXd v(want);
    for (Eigen::Index i = 0; i < want; ++i)
      v(i) = detail::parse_double(tokens[static_cast<std::size_t>(i) + 1], line_no);
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> tokens = detail::scenario_tokens(line);
    if (tokens.empty()) continue;

    if (pending_anchor_rows > 0) {
      if (static_cast<int>(tokens.size()) != sc.dim)
        throw ScenarioError("line " + std::to_string(line_no) +
                            ": anchor row expects " + std::to_string(sc.dim) +
                            " coordinates");
      for (int j = 0; j < sc.dim; ++j)
        sc.anchors(j, next_anchor) =
            detail::parse_double(tokens[static_cast<std::size_t>(j)], line_no);
      ++next_anchor;
      --pending_anchor_rows;
      continue;
    }

    const std::string& key = tokens[0];
    if (key == "dim") {
      if (tokens.size() != 2)
        throw ScenarioError("line " + std::to_string(line_no) + ": dim expects one value");
      sc.dim = static_cast<int>(detail::parse_double(tokens[1], line_no));
      if (sc.dim < 1)
        throw ScenarioError("line " + std::to_string(line_no) + ": dim must be positive");
      have_dim = true;
    } else if (key == "anchors") {
      if (!have_dim)
        throw ScenarioError("line " + std::to_string(line_no) + ": dim must precede anchors");
      if (tokens.size() != 2)
        throw ScenarioError("line " + std::to_string(line_no) + ": anchors expects a count");
      const int m = static_cast<int>(detail::parse_double(tokens[1], line_no));
      if (m < 1)
        throw ScenarioError("line " + std::to_string(line_no) + ": anchor count must be positive");
      sc.anchors.resize(sc.dim, m);
      pending_anchor_rows = m;
      next_anchor = 0;
      have_anchors = true;
    } else if (key == "pool") {
      sc.pool = true;
    } else if (key == "target") {
      if (!have_dim)
        throw ScenarioError("line " + std::to_string(line_no) + ": dim must precede target");
      sc.target = read_vector(tokens, sc.dim, "target");
    } else if (key == "delta") {
      if (tokens.size() != 2)
        throw ScenarioError("line " + std::to_string(line_no) + ": delta expects one value");
      sc.delta = detail::parse_double(tokens[1], line_no);
      if (!(*sc.delta >= 0))
        throw ScenarioError("line " + std::to_string(line_no) + ": delta must be nonnegative");
    } else if (key == "xi_lower" || key == "xi_upper") {
      if (!have_anchors)
        throw ScenarioError("line " + std::to_string(line_no) + ": anchors must precede " + key);
      auto v = read_vector(tokens, sc.anchors.cols(), key.c_str());
      if (key == "xi_lower")
        sc.xi_lower = std::move(v);
      else
        sc.xi_upper = std::move(v);
    } else if (key == "seed") {
      if (tokens.size() != 2)
        throw ScenarioError("line " + std::to_string(line_no) + ": seed expects one value");
      try {
        sc.seed = std::stoull(tokens[1]);
      } catch (const std::exception&) {
        throw ScenarioError("line " + std::to_string(line_no) + ": bad seed '" + tokens[1] + "'");
      }
    } else {
      throw ScenarioError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  if (!have_dim) throw ScenarioError("scenario is missing 'dim'");
  if (!have_anchors) throw ScenarioError("scenario is missing 'anchors'");
  if (pending_anchor_rows > 0)
    throw ScenarioError("scenario ended inside the anchor block");
  if (static_cast<bool>(sc.xi_lower) != static_cast<bool>(sc.xi_upper))
    throw ScenarioError("xi_lower and xi_upper must be given together");
  if (sc.xi_lower && (sc.xi_lower->array() > sc.xi_upper->array()).any())
    throw ScenarioError("xi_lower exceeds xi_upper");
  return sc;
}

inline Scenario parse_scenario_string(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
  return parse_scenario(in);
}

/// Canonical serialization; parse(write(sc)) reproduces every field.
inline std::string write_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << "dim " << sc.dim << "\n";
  out << "anchors " << sc.anchors.cols() << "\n";
  for (Eigen::Index i = 0; i < sc.anchors.cols(); ++i) {
    for (int j = 0; j < sc.dim; ++j)
      out << (j ? " " : "") << format_float(sc.anchors(j, i));
    out << "\n";
  }
  if (sc.pool) out << "pool\n";
  if (sc.target) {
    out << "target";
    for (int j = 0; j < sc.dim; ++j) out << " " << format_float((*sc.target)(j));
    out << "\n";
  }
  if (sc.delta) out << "delta " << format_float(*sc.delta) << "\n";
  if (sc.xi_lower) {
    out << "xi_lower";
    for (Eigen::Index i = 0; i < sc.xi_lower->size(); ++i)
      out << " " << format_float((*sc.xi_lower)(i));
    out << "\n";
  }
  if (sc.xi_upper) {
    out << "xi_upper";
    for (Eigen::Index i = 0; i < sc.xi_upper->size(); ++i)
      out << " " << format_float((*sc.xi_upper)(i));
    out << "\n";
  }
  if (sc.seed) out << "seed " << *sc.seed << "\n";
  return out.str();
}

}  // namespace locset
