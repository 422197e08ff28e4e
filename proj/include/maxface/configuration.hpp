#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "maxface/common.hpp"

namespace maxface {

enum class PatternKind { Zigzag, Tweezer };
enum class Sheet { Plus, Minus };
enum class Variant { Minimal, Maximal, Companion };

std::string to_string(PatternKind kind);
std::string to_string(Variant variant);
PatternKind parse_pattern_kind(const std::string& text);
Variant parse_variant(const std::string& text);

/// Exponents a_{-p..p} (each exactly +1/2 or -1/2) of the zigzag or tweezer pattern.
/// Zigzag: alternating from a_{-p} = -1/2. Tweezer: a_{+-1} = -1/2, a_{+-p} = +1/2 with
/// alternation inwards, a_0 = +1/2 for odd p and -1/2 for even p. Tweezer genus 1 coincides
/// with the zigzag.
std::vector<double> make_pattern(PatternKind kind, int genus);

/// A point of the hyperelliptic double: a base point of the closed upper half-plane plus a sheet.
struct SheetPoint {
  Complex base;
  Sheet sheet = Sheet::Plus;
};

/// Real marked points t_{-p} < ... < t_p with exponents a_j = +-1/2 and a scale constant c.
/// Index arguments j run over -p..p.
class MarkedConfiguration {
 public:
  MarkedConfiguration() = default;

  /// General configuration; `points` and `exponents` have length 2p+1.
  static MarkedConfiguration general(const std::vector<double>& points,
                                     const std::vector<double>& exponents, Complex c);

  /// Symmetric configuration t_{-j} = -t_j, t_0 = 0, from the positive points t_1..t_p.
  static MarkedConfiguration symmetric(const std::vector<double>& positive_points,
                                       const std::vector<double>& exponents, Complex c);

  int genus() const { return genus_; }
  int size() const { return 2 * genus_ + 1; }
  double point(int j) const { return points_[j + genus_]; }
  double exponent(int j) const { return exponents_[j + genus_]; }
  /// 2 a_j as an integer (+1 or -1).
  int twice_exponent(int j) const { return exponents_[j + genus_] > 0 ? 1 : -1; }
  const Eigen::VectorXd& points() const { return points_; }
  const Eigen::VectorXd& exponents() const { return exponents_; }
  Complex c() const { return c_; }
  bool is_symmetric() const { return symmetric_; }

  /// Integer weight at infinity, -4 - sum_j 2a_j (always odd).
  int weight_at_infinity() const;
  /// Whether a_j == a_{-j} for all j.
  bool exponents_palindromic() const;
  /// Smallest gap t_{j+1} - t_j.
  double min_gap() const;

  MarkedConfiguration with_c(Complex c) const;

 private:
  int genus_ = 0;
  Eigen::VectorXd points_;
  Eigen::VectorXd exponents_;
  Complex c_{1.0, 0.0};
  bool symmetric_ = false;
};

}  // namespace maxface
