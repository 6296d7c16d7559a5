#ifndef MOULDNF_ALPHABET_HPP
#define MOULDNF_ALPHABET_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mouldnf/scalar.hpp"

namespace mouldnf {

using IntVec = std::vector<int>;

int l1_norm(const IntVec& k);
IntVec add(const IntVec& a, const IntVec& b);
IntVec negate(const IntVec& a);
bool is_zero(const IntVec& k);

/// Calls `visit` on every k in Z^d with 0 < |k|_1 <= radius, in lexicographic order.
void for_each_in_l1_ball(std::size_t d, int radius, const std::function<void(const IntVec&)>& visit);

/// A letter stores the mode vector k; its scalar value is i<k, omega>.
struct Letter {
  IntVec k;

  friend auto operator<=>(const Letter&, const Letter&) = default;
  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<IntVec> ks);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  /// Letters [begin, end).
  Word slice(std::size_t begin, std::size_t end) const;
  Word prefix(std::size_t n) const { return slice(0, n); }
  Word suffix_from(std::size_t begin) const { return slice(begin, letters_.size()); }
  /// The word with its first letter removed (empty stays empty).
  Word tail() const { return empty() ? Word{} : suffix_from(1); }
  Word appended(const Letter& l) const;

  /// Sum of the mode vectors; zero vector of dimension `d` for the empty word.
  IntVec mode_sum(std::size_t d) const;

  std::string to_string() const;
  static Word parse(const std::string& text);

  std::size_t hash() const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

/// All words of length exactly `r` over `alphabet`, in lexicographic order of letter index.
std::vector<Word> words_of_length(const std::vector<Letter>& alphabet, std::size_t r);
/// All words of length 1..max_r over `alphabet`, shortest first.
std::vector<Word> words_up_to(const std::vector<Letter>& alphabet, std::size_t max_r);

/// Frequency vector omega with its declared resonance module and optional
/// Diophantine data. Resonance membership is decided on the integers: k is
/// resonant iff it lies in the rational span of the declared basis (the
/// resonance module {k : <k,omega> = 0} is saturated, so this is the same as
/// membership in the lattice the basis generates up to saturation).
class Frequency {
public:
  explicit Frequency(std::vector<double> omega, std::vector<IntVec> resonance_basis = {},
                     std::optional<double> dioph_alpha = std::nullopt, double dioph_tau = 1.0);

  /// Rational omega; enables exact Gaussian-rational mould arithmetic.
  static Frequency rational(std::vector<Rational> omega, std::vector<IntVec> resonance_basis = {},
                            std::optional<double> dioph_alpha = std::nullopt, double dioph_tau = 1.0);

  std::size_t dim() const { return omega_.size(); }
  const std::vector<double>& omega() const { return omega_; }
  const std::vector<IntVec>& resonance_basis() const { return basis_; }
  std::optional<double> dioph_alpha() const { return alpha_; }
  double dioph_tau() const { return tau_; }
  bool has_exact_omega() const { return exact_omega_.has_value(); }
  const std::vector<Rational>& exact_omega() const;

  double dot(const IntVec& k) const;
  Rational dot_exact(const IntVec& k) const;
  bool in_resonance_lattice(const IntVec& k) const;

  /// i<k, omega> in the requested scalar type.
  template <class T>
  T letter_value(const IntVec& k) const;

  /// omega scaled by c (resonance module unchanged).
  Frequency scaled(double c) const;

  void check_dimension(const IntVec& k) const;

private:
  Frequency() = default;
  void init(std::vector<IntVec> basis, std::optional<double> alpha, double tau);

  std::vector<double> omega_;
  std::optional<std::vector<Rational>> exact_omega_;
  std::vector<IntVec> basis_;
  std::vector<std::vector<long long>> annihilator_;
  std::optional<double> alpha_;
  double tau_ = 1.0;
};

template <>
Complex Frequency::letter_value<Complex>(const IntVec& k) const;
template <>
GaussianRational Frequency::letter_value<GaussianRational>(const IntVec& k) const;

/// Sigma of a word: i<sum k_j, omega> in floating point.
Complex sigma(const Word& word, const Frequency& freq);

/// Exact surrogate for Sigma(word) = 0.
bool is_resonant(const Word& word, const Frequency& freq);

/// beta_tau: sum of |lambda_sigma|^(-1/tau) over subsets sigma with lambda_sigma != 0.
/// The empty word gives 0.
double beta(const Word& word, double tau, const Frequency& freq);

/// Number of ways `lam` is an interleaving of `a` and `b`.
std::uint64_t shuffle_coefficient(const Word& a, const Word& b, const Word& lam);

/// min over 0 < |k|_1 <= K, k non-resonant, of |<k,omega>| |k|_1^tau.
/// Throws std::domain_error when every k in the ball is resonant.
double diophantine_alpha(const Frequency& freq, double tau, int K);

}  // namespace mouldnf

#endif  // MOULDNF_ALPHABET_HPP
