#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "singmod/rational.hpp"

namespace singmod::quad {

class Discriminant {
 public:
  /// Validates value < 0 and value = 0, 1 (mod 4); computes h by counting reduced forms.
  static Discriminant make(std::int64_t value);
  /// As make(), but rejects non-fundamental values.
  static Discriminant fundamental(std::int64_t value);

  std::int64_t value() const { return value_; }
  std::int64_t abs() const { return -value_; }
  bool is_fundamental() const { return fundamental_; }
  int class_number() const { return h_; }
  int unit_count() const { return w_; }
  /// (D|p): +1 split, -1 inert, 0 ramified.
  int splitting(std::int64_t p) const;

  friend bool operator==(const Discriminant& x, const Discriminant& y) { return x.value_ == y.value_; }

 private:
  Discriminant(std::int64_t v, bool f, int h, int w) : value_(v), fundamental_(f), h_(h), w_(w) {}
  std::int64_t value_;
  bool fundamental_;
  int h_;
  int w_;
};

bool is_fundamental_discriminant(std::int64_t value);

struct BinaryQF {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  std::int64_t disc() const { return b * b - 4 * a * c; }
  Integer eval(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }
  std::string label() const;

  friend auto operator<=>(const BinaryQF&, const BinaryQF&) = default;
};

bool is_reduced(const BinaryQF& q);
/// Unique reduced form SL2(Z)-equivalent to q. Requires disc < 0, a > 0.
BinaryQF reduce_form(const BinaryQF& q);

/// Dirichlet composition without reduction: the ideal product of the lattices of
/// f and g is content * (a, (b + sqrt D)/2).
struct RawComposition {
  std::int64_t content;
  BinaryQF form;
};
RawComposition compose_raw(const BinaryQF& f, const BinaryQF& g);
BinaryQF compose(const BinaryQF& f, const BinaryQF& g);

/// Primitive reduced forms of discriminant D, lexicographically sorted.
std::vector<BinaryQF> reduced_forms(std::int64_t D);

/// x + y sqrt(D).
struct KElement {
  Rational x;
  Rational y;

  Rational norm(std::int64_t D) const { return x * x - D * y * y; }
  Rational trace() const { return 2 * x; }
  KElement conj() const { return {x, -y}; }
  KElement mul(const KElement& o, std::int64_t D) const { return {x * o.x + D * y * o.y, x * o.y + y * o.x}; }
  KElement operator+(const KElement& o) const { return {x + o.x, y + o.y}; }
  KElement operator-(const KElement& o) const { return {x - o.x, y - o.y}; }
  KElement operator-() const { return {-x, -y}; }
  KElement scaled(const Rational& s) const { return {x * s, y * s}; }
  friend bool operator==(const KElement&, const KElement&) = default;
};

/// scale * (aZ + ((b + sqrt D)/2) Z) with a > 0, b^2 = D (mod 4a), b in (-a, a].
class FractionalIdeal {
 public:
  FractionalIdeal(Rational scale, std::int64_t a, std::int64_t b, std::int64_t D);

  static FractionalIdeal unit(std::int64_t D) { return FractionalIdeal(1, 1, D & 1, D); }
  static FractionalIdeal from_form(const BinaryQF& q);
  /// The principal ideal gamma * O.
  static FractionalIdeal principal(const KElement& gamma, std::int64_t D);
  /// The different (sqrt D).
  static FractionalIdeal different(std::int64_t D) { return principal({0, 1}, D); }

  const Rational& scale() const { return scale_; }
  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t D() const { return D_; }
  BinaryQF form() const;

  Rational norm() const { return scale_ * scale_ * a_; }
  FractionalIdeal conj() const;
  FractionalIdeal inverse() const;
  FractionalIdeal operator*(const FractionalIdeal& o) const;
  FractionalIdeal scaled(const Rational& s) const;
  bool is_integral() const;
  bool contains(const KElement& z) const;
  /// Z-basis of the lattice.
  std::pair<KElement, KElement> basis() const;
  /// Coordinates of z in basis(); integral iff z is in the ideal.
  std::pair<Rational, Rational> coordinates(const KElement& z) const;

  friend bool operator==(const FractionalIdeal&, const FractionalIdeal&) = default;

 private:
  Rational scale_;
  std::int64_t a_;
  std::int64_t b_;
  std::int64_t D_;
};

/// Lattice generated over Z by the given elements, as an ideal. The generators must span
/// an O-ideal; throws std::invalid_argument otherwise.
FractionalIdeal lattice_ideal(const std::vector<KElement>& gens, std::int64_t D);

class ClassGroup {
 public:
  explicit ClassGroup(const Discriminant& D);
  /// Rebuilds from stored reduced forms (cache path); validates each form.
  ClassGroup(const Discriminant& D, std::vector<BinaryQF> forms);

  const Discriminant& disc() const { return disc_; }
  int h() const { return static_cast<int>(forms_.size()); }
  const std::vector<BinaryQF>& forms() const { return forms_; }
  const BinaryQF& form(int i) const { return forms_.at(static_cast<std::size_t>(i)); }
  std::string label(int i) const { return form(i).label(); }

  int identity() const { return 0; }
  int mul(int i, int j) const { return table_[static_cast<std::size_t>(i * h() + j)]; }
  int inverse(int i) const { return inverse_[static_cast<std::size_t>(i)]; }
  int pow(int i, std::int64_t e) const;
  int index_of(const BinaryQF& q) const;
  int class_of(const FractionalIdeal& I) const { return index_of(I.form()); }
  std::vector<int> two_torsion() const;
  /// All classes x with x^2 = target.
  std::vector<int> square_roots(int target) const;

  /// Primes dividing D, ascending; genus characters are indexed by them.
  const std::vector<std::int64_t>& genus_primes() const { return genus_primes_; }
  /// chi_l(class) = (D, a)_l for any a represented by the class.
  int genus_character(std::size_t k, int cls) const;
  std::vector<int> genus_of(int cls) const;

 private:
  void build();

  Discriminant disc_;
  std::vector<BinaryQF> forms_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::int64_t> genus_primes_;
  std::vector<std::vector<int>> genus_;
};

/// Prime ideal above a non-split or split p: (p, (b + sqrt D)/2) with the smallest b in [0, 2p).
FractionalIdeal prime_above(std::int64_t p, std::int64_t D);

/// Counts of integral ideals of norm n per class; all zero unless n is a positive integer.
std::vector<std::int64_t> rho_all(const ClassGroup& G, const Rational& n);
std::int64_t rho(const ClassGroup& G, const Rational& n, int cls);
/// Sum of rho over the classes in a genus. Throws on a vector of the wrong length or product != 1.
std::int64_t rho_genus(const ClassGroup& G, const Rational& n, const std::vector<int>& genus);

struct HeegnerRep {
  int label;          // class index of a, where the form corresponds to a*n
  BinaryQF form;      // [aN, B, c]
  Rational re;        // -B/(2aN)
  Rational im_sq;     // |D|/(2aN)^2
};

/// One representative per class, ordered by label. `skip` selects an alternate transversal
/// by passing over the first `skip` admissible ideals of each class.
std::vector<HeegnerRep> heegner_reps(const ClassGroup& G, std::int64_t N, std::int64_t rho, int skip = 0);

/// Class of n = (N, (rho + sqrt D)/2).
int level_ideal_class(const ClassGroup& G, std::int64_t N, std::int64_t rho);

/// Thread-safe lookup of class groups by discriminant, optionally persisted as one JSON file per D.
class ClassGroupCache {
 public:
  ClassGroupCache() = default;
  explicit ClassGroupCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::shared_ptr<const ClassGroup> get(std::int64_t D);
  /// Persist to `dir` from now on; nullopt keeps groups in memory only.
  void set_directory(std::optional<std::filesystem::path> dir);
  static ClassGroupCache& global();

 private:
  std::optional<std::filesystem::path> dir_;
  std::shared_mutex mu_;
  std::map<std::int64_t, std::shared_ptr<const ClassGroup>> groups_;
};

std::string class_group_to_json(const ClassGroup& G);
ClassGroup class_group_from_json(const std::string& text);

}  // namespace singmod::quad
