#include "mouldnf/alphabet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mouldnf {

int l1_norm(const IntVec& k) {
  int s = 0;
  for (int v : k) s += std::abs(v);
  return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("mode vectors of different dimension");
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVec negate(const IntVec& a) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

bool is_zero(const IntVec& k) {
  return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
}

void for_each_in_l1_ball(std::size_t d, int radius, const std::function<void(const IntVec&)>& visit) {
  IntVec k(d, -radius);
  if (d == 0) return;
  while (true) {
    int n = l1_norm(k);
    if (n > 0 && n <= radius) visit(k);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (k[i] < radius) {
        ++k[i];
        break;
      }
      k[i] = -radius;
      if (i == 0) return;
    }
  }
}

// ---------------------------------------------------------------------------
// Word

Word::Word(std::initializer_list<IntVec> ks) {
  letters_.reserve(ks.size());
  for (const auto& k : ks) letters_.push_back(Letter{k});
}

Word Word::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > letters_.size()) throw std::out_of_range("word slice out of range");
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                                  letters_.begin() + static_cast<std::ptrdiff_t>(end)));
}

Word Word::appended(const Letter& l) const {
  std::vector<Letter> v = letters_;
  v.push_back(l);
  return Word(std::move(v));
}

IntVec Word::mode_sum(std::size_t d) const {
  IntVec s(d, 0);
  for (const auto& l : letters_) {
    if (l.k.size() != d) throw std::invalid_argument("letter dimension does not match frequency");
    for (std::size_t i = 0; i < d; ++i) s[i] += l.k[i];
  }
  return s;
}

std::string Word::to_string() const {
  // letters separated by ';', components by ','; the empty word is "".
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ';';
    for (std::size_t j = 0; j < letters_[i].k.size(); ++j) {
      if (j) os << ',';
      os << letters_[i].k[j];
    }
  }
  return os.str();
}

Word Word::parse(const std::string& text) {
  std::vector<Letter> letters;
  if (text.empty()) return Word{};
  std::stringstream ss(text);
  std::string letter;
  while (std::getline(ss, letter, ';')) {
    Letter l;
    std::stringstream ls(letter);
    std::string comp;
    while (std::getline(ls, comp, ',')) {
      std::size_t pos = 0;
      int v = std::stoi(comp, &pos);
      if (pos != comp.size()) throw std::invalid_argument("bad word component: " + comp);
      l.k.push_back(v);
    }
    if (l.k.empty()) throw std::invalid_argument("empty letter in word: " + text);
    letters.push_back(std::move(l));
  }
  return Word(std::move(letters));
}

std::size_t Word::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ letters_.size();
  for (const auto& l : letters_) {
    for (int v : l.k) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h = h * 1099511628211ULL + 0x1f;
  }
  return h;
}

std::vector<Word> words_of_length(const std::vector<Letter>& alphabet, std::size_t r) {
  std::vector<Word> out;
  if (r == 0) {
    out.emplace_back();
    return out;
  }
  if (alphabet.empty()) return out;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    std::vector<Letter> ls;
    ls.reserve(r);
    for (auto i : idx) ls.push_back(alphabet[i]);
    out.emplace_back(std::move(ls));
    std::size_t p = r;
    while (p > 0) {
      --p;
      if (++idx[p] < alphabet.size()) break;
      idx[p] = 0;
      if (p == 0) return out;
    }
  }
}

std::vector<Word> words_up_to(const std::vector<Letter>& alphabet, std::size_t max_r) {
  std::vector<Word> out;
  for (std::size_t r = 1; r <= max_r; ++r) {
    auto w = words_of_length(alphabet, r);
    out.insert(out.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frequency

namespace {

using boost::multiprecision::cpp_int;

// Integer basis of {w : b.w = 0 for all b in basis}. k lies in the rational
// span of the basis iff w.k = 0 for every returned w.
std::vector<std::vector<long long>> annihilator_of(const std::vector<IntVec>& basis, std::size_t d) {
  std::vector<std::vector<Rational>> m;
  for (const auto& b : basis) {
    std::vector<Rational> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = b[j];
    m.push_back(std::move(row));
  }
  // reduced row echelon form
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < d && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
      if (r2 == row || m[r2][col] == 0) continue;
      Rational f = m[r2][col];
      for (std::size_t j = 0; j < d; ++j) m[r2][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::vector<long long>> out;
  for (std::size_t free = 0; free < d; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> w(d, 0);
    w[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) w[pivots[i]] = -m[i][free];
    cpp_int lcm = 1;
    for (const auto& v : w) {
      cpp_int den = boost::multiprecision::denominator(v);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<long long> iw(d);
    for (std::size_t j = 0; j < d; ++j) {
      Rational scaled = w[j] * Rational(lcm);
      cpp_int num = boost::multiprecision::numerator(scaled);
      if (num > std::numeric_limits<long long>::max() || num < std::numeric_limits<long long>::min())
        throw std::overflow_error("resonance basis too large for exact lattice test");
      iw[j] = static_cast<long long>(num);
    }
    out.push_back(std::move(iw));
  }
  return out;
}

int sample_radius(std::size_t d) {
  int radius = 8;
  while (radius > 1 && std::pow(2.0 * radius + 1.0, static_cast<double>(d)) > 2e5) --radius;
  return radius;
}

}  // namespace

Frequency::Frequency(std::vector<double> omega, std::vector<IntVec> resonance_basis,
                     std::optional<double> dioph_alpha, double dioph_tau)
    : omega_(std::move(omega)) {
  init(std::move(resonance_basis), dioph_alpha, dioph_tau);
}

Frequency Frequency::rational(std::vector<Rational> omega, std::vector<IntVec> resonance_basis,
                              std::optional<double> dioph_alpha, double dioph_tau) {
  Frequency f;
  f.omega_.reserve(omega.size());
  for (const auto& q : omega) f.omega_.push_back(static_cast<double>(q));
  f.exact_omega_ = std::move(omega);
  f.init(std::move(resonance_basis), dioph_alpha, dioph_tau);
  return f;
}

void Frequency::init(std::vector<IntVec> basis, std::optional<double> alpha, double tau) {
  if (omega_.empty()) throw std::invalid_argument("frequency vector must be nonempty");
  if (tau < 1.0) throw std::invalid_argument("Diophantine exponent tau must be >= 1");
  if (alpha && !(*alpha > 0.0)) throw std::invalid_argument("Diophantine alpha must be positive");
  double omega_l1 = 0.0;
  for (double w : omega_) omega_l1 += std::abs(w);
  for (const auto& b : basis) {
    check_dimension(b);
    if (is_zero(b)) throw std::invalid_argument("resonance basis vector is zero");
    bool ok = exact_omega_ ? dot_exact(b) == 0
                           : (dot(b) == 0.0 || std::abs(dot(b)) < 1e-12 * l1_norm(b) * omega_l1);
    if (!ok) throw std::invalid_argument("declared resonance is not a resonance of omega");
  }
  basis_ = std::move(basis);
  annihilator_ = annihilator_of(basis_, omega_.size());
  tau_ = tau;
  alpha_ = alpha;
  if (alpha_) {
    for_each_in_l1_ball(dim(), sample_radius(dim()), [&](const IntVec& k) {
      if (in_resonance_lattice(k)) return;
      double bound = *alpha_ * std::pow(static_cast<double>(l1_norm(k)), -tau_);
      if (std::abs(dot(k)) < bound)
        throw std::invalid_argument("Diophantine condition violated at k with |k|_1 = " +
                                    std::to_string(l1_norm(k)));
    });
  }
}

const std::vector<Rational>& Frequency::exact_omega() const {
  if (!exact_omega_) throw std::logic_error("frequency has no exact rational representation");
  return *exact_omega_;
}

void Frequency::check_dimension(const IntVec& k) const {
  if (k.size() != omega_.size())
    throw std::invalid_argument("mode dimension " + std::to_string(k.size()) + " does not match frequency dimension " +
                                std::to_string(omega_.size()));
}

double Frequency::dot(const IntVec& k) const {
  check_dimension(k);
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * omega_[i];
  return s;
}

Rational Frequency::dot_exact(const IntVec& k) const {
  check_dimension(k);
  const auto& w = exact_omega();
  Rational s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) s += w[i] * k[i];
  return s;
}

bool Frequency::in_resonance_lattice(const IntVec& k) const {
  check_dimension(k);
  for (const auto& w : annihilator_) {
    long long s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += w[i] * k[i];
    if (s != 0) return false;
  }
  return true;
}

template <>
Complex Frequency::letter_value<Complex>(const IntVec& k) const {
  if (in_resonance_lattice(k)) return {};
  return {0.0, dot(k)};
}

template <>
GaussianRational Frequency::letter_value<GaussianRational>(const IntVec& k) const {
  return GaussianRational(Rational(0), dot_exact(k));
}

Frequency Frequency::scaled(double c) const {
  std::vector<double> w = omega_;
  for (auto& v : w) v *= c;
  std::optional<double> a;
  if (alpha_) a = *alpha_ * std::abs(c);
  return Frequency(std::move(w), basis_, a, tau_);
}

// ---------------------------------------------------------------------------

Complex sigma(const Word& word, const Frequency& freq) {
  return {0.0, freq.dot(word.mode_sum(freq.dim()))};
}

bool is_resonant(const Word& word, const Frequency& freq) {
  return freq.in_resonance_lattice(word.mode_sum(freq.dim()));
}

double beta(const Word& word, double tau, const Frequency& freq) {
  if (tau < 1.0) throw std::invalid_argument("beta requires tau >= 1");
  const std::size_t r = word.size();
  if (r == 0) return 0.0;
  if (r > 30) throw std::invalid_argument("beta: word too long for subset enumeration");
  const std::size_t d = freq.dim();
  for (const auto& l : word.letters()) freq.check_dimension(l.k);
  double total = 0.0;
  IntVec acc(d);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (std::uint64_t{1} << i))
        for (std::size_t j = 0; j < d; ++j) acc[j] += word[i].k[j];
    if (freq.in_resonance_lattice(acc)) continue;
    total += std::pow(std::abs(freq.dot(acc)), -1.0 / tau);
  }
  return total;
}

std::uint64_t shuffle_coefficient(const Word& a, const Word& b, const Word& lam) {
  const std::size_t p = a.size(), q = b.size();
  if (lam.size() != p + q) return 0;
  // ways[i][j]: interleavings of a[0,i) and b[0,j) spelling lam[0,i+j)
  std::vector<std::vector<std::uint64_t>> ways(p + 1, std::vector<std::uint64_t>(q + 1, 0));
  ways[0][0] = 1;
  for (std::size_t i = 0; i <= p; ++i) {
    for (std::size_t j = 0; j <= q; ++j) {
      if (i == 0 && j == 0) continue;
      const Letter& target = lam[i + j - 1];
      std::uint64_t w = 0;
      if (i > 0 && a[i - 1] == target) w += ways[i - 1][j];
      if (j > 0 && b[j - 1] == target) w += ways[i][j - 1];
      ways[i][j] = w;
    }
  }
  return ways[p][q];
}

double diophantine_alpha(const Frequency& freq, double tau, int K) {
  if (K < 1) throw std::invalid_argument("diophantine_alpha requires K >= 1");
  double best = std::numeric_limits<double>::infinity();
  for_each_in_l1_ball(freq.dim(), K, [&](const IntVec& k) {
    if (freq.in_resonance_lattice(k)) return;
    best = std::min(best, std::abs(freq.dot(k)) * std::pow(static_cast<double>(l1_norm(k)), tau));
  });
  if (!std::isfinite(best)) throw std::domain_error("degenerate frequency: every k in the box is resonant");
  return best;
}

}  // namespace mouldnf
