#include "hkt/forms.hpp"

#include <sstream>
#include <stdexcept>

namespace hkt {

int merge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += popcount(j + 1 >= 32 ? Mask{0} : (a >> (j + 1)));
  }
  return (swaps & 1) ? -1 : 1;
}

std::vector<int> letters(Mask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::vector<Mask> basis_masks(int dim, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > dim) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= bit(i);
    out.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

std::string monomial_name(Mask m, const std::string& symbol) {
  if (m == 0) return "1";
  std::string out;
  for (int l : letters(m)) {
    if (!out.empty()) out += "^";
    out += symbol + std::to_string(l + 1);
  }
  return out;
}

Rational factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Form::Form(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 0 || dim > kMaxLetters) throw std::invalid_argument("Form: unsupported dimension");
  if (degree < 0 || degree > dim) throw std::invalid_argument("Form: degree out of range");
}

Form Form::monomial(int dim, Mask m, const Scalar& c) {
  Form f(dim, popcount(m));
  f.add(m, c);
  return f;
}

Form Form::constant(int dim, const Scalar& c) { return monomial(dim, 0, c); }

Form Form::from_coefficients(int dim, int degree, const std::vector<Mask>& basis,
                             const ExactVector& coeffs) {
  if (static_cast<Index>(basis.size()) != coeffs.size())
    throw std::invalid_argument("Form::from_coefficients: size mismatch");
  Form f(dim, degree);
  for (std::size_t i = 0; i < basis.size(); ++i) f.add(basis[i], coeffs(static_cast<Index>(i)));
  return f;
}

Form Form::one_form(const ExactVector& v) {
  Form f(static_cast<int>(v.size()), 1);
  for (Index j = 0; j < v.size(); ++j) f.add(bit(static_cast<int>(j)), v(j));
  return f;
}

Scalar Form::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Form::add(Mask m, const Scalar& c) {
  if (c.is_zero()) return;
  if (popcount(m) != degree_) throw std::logic_error("Form::add: degree mismatch");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactVector Form::coefficients(const std::vector<Mask>& basis) const {
  ExactVector v = zero_vector(static_cast<Index>(basis.size()));
  std::size_t found = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto it = terms_.find(basis[i]);
    if (it != terms_.end()) {
      v(static_cast<Index>(i)) = it->second;
      ++found;
    }
  }
  if (found != terms_.size()) throw std::logic_error("Form::coefficients: support outside basis");
  return v;
}

Form& Form::operator+=(const Form& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_) throw std::logic_error("Form +: incompatible forms");
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_) throw std::logic_error("Form -: incompatible forms");
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Form& Form::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Form& a, const Form& b) {
  return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

Form Form::conj_coefficients() const {
  Form out = *this;
  for (auto& [m, c] : out.terms_) c = c.conj();
  return out;
}

std::string Form::to_string(const std::string& symbol) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.to_string();
    const bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (compound) cs = "(" + cs + ")";
    if (!first) {
      if (!compound && cs.front() == '-') {
        os << " - ";
        cs.erase(0, 1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (m == 0) {
      os << cs;
    } else if (cs == "1") {
      os << monomial_name(m, symbol);
    } else if (cs == "-1") {
      os << "-" << monomial_name(m, symbol);
    } else {
      os << cs << "*" << monomial_name(m, symbol);
    }
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw std::logic_error("wedge: dimension mismatch");
  if (a.degree() + b.degree() > a.dim()) return Form(a.dim(), a.dim());
  Form out(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const int s = merge_sign(ma, mb);
      if (s == 0) continue;
      out.add(ma | mb, s > 0 ? ca * cb : -(ca * cb));
    }
  return out;
}

Form power(const Form& a, int p) {
  if (p < 0) throw std::invalid_argument("power: negative exponent");
  Form out = Form::constant(a.dim(), Scalar(1));
  for (int i = 0; i < p; ++i) out = wedge(out, a);
  return out;
}

Form interior(const ExactVector& x, const Form& a) {
  if (x.size() != a.dim()) throw std::logic_error("interior: dimension mismatch");
  if (a.degree() == 0) return Form(a.dim(), 0);
  Form out(a.dim(), a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    int pos = 0;
    for (int l : letters(m)) {
      const Scalar& xl = x(l);
      if (!xl.is_zero()) {
        Scalar t = c * xl;
        out.add(m & ~bit(l), (pos & 1) ? -t : t);
      }
      ++pos;
    }
  }
  return out;
}

Scalar evaluate(const Form& a, const std::vector<ExactVector>& vectors) {
  if (static_cast<int>(vectors.size()) != a.degree()) throw std::invalid_argument("evaluate: arity mismatch");
  Form f = a;
  for (const auto& v : vectors) f = interior(v, f);
  return f.coeff(0);
}

namespace {

// Sparse columns of a letter map: column j as (letter, coefficient) pairs.
std::vector<std::vector<std::pair<int, Scalar>>> sparse_columns(const ExactMatrix& m) {
  std::vector<std::vector<std::pair<int, Scalar>>> cols(static_cast<std::size_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j)
    for (Index k = 0; k < m.rows(); ++k)
      if (!m(k, j).is_zero()) cols[static_cast<std::size_t>(j)].emplace_back(static_cast<int>(k), m(k, j));
  return cols;
}

}  // namespace

Form substitute(const Form& a, const ExactMatrix& m) {
  if (m.rows() != a.dim() || m.cols() != a.dim()) throw std::logic_error("substitute: shape mismatch");
  const auto cols = sparse_columns(m);
  Form out(a.dim(), a.degree());
  for (const auto& [mask, c] : a.terms()) {
    std::map<Mask, Scalar> partial{{Mask{0}, c}};
    for (int l : letters(mask)) {
      std::map<Mask, Scalar> next;
      for (const auto& [pm, pc] : partial)
        for (const auto& [k, mk] : cols[static_cast<std::size_t>(l)]) {
          const int s = merge_sign(pm, bit(k));
          if (s == 0) continue;
          Scalar t = pc * mk;
          auto [it, inserted] = next.try_emplace(pm | bit(k), s > 0 ? t : -t);
          if (!inserted) it->second += s > 0 ? t : -t;
        }
      partial.swap(next);
    }
    for (const auto& [pm, pc] : partial) out.add(pm, pc);
  }
  return out;
}

Form derive(const Form& a, const ExactMatrix& action) {
  if (action.rows() != a.dim() || action.cols() != a.dim()) throw std::logic_error("derive: shape mismatch");
  const auto cols = sparse_columns(action);
  Form out(a.dim(), a.degree());
  for (const auto& [mask, c] : a.terms())
    for (int l : letters(mask)) {
      const Mask rest = mask & ~bit(l);
      const Mask left = rest & (bit(l) - 1);
      const Mask right = rest & ~left;
      for (const auto& [k, ak] : cols[static_cast<std::size_t>(l)]) {
        if (rest & bit(k)) continue;
        const int s = merge_sign(left, bit(k)) * merge_sign(left | bit(k), right);
        Scalar t = c * ak;
        out.add(rest | bit(k), s > 0 ? t : -t);
      }
    }
  return out;
}

Coframe::Coframe(std::vector<Form> d_letters) : d_letters_(std::move(d_letters)) {
  for (const auto& f : d_letters_)
    if (f.degree() != 2 || f.dim() != dim()) throw std::invalid_argument("Coframe: d of a letter must be a 2-form");
}

Form Coframe::d(const Form& a) const {
  if (a.dim() != dim()) throw std::logic_error("Coframe::d: dimension mismatch");
  if (a.degree() + 1 > a.dim()) return Form(a.dim(), a.dim());
  Form out(a.dim(), a.degree() + 1);
  for (const auto& [mask, c] : a.terms()) {
    int pos = 0;
    for (int l : letters(mask)) {
      const Mask rest = mask & ~bit(l);
      const Mask left = rest & (bit(l) - 1);
      const Mask right = rest & ~left;
      for (const auto& [mb, cb] : d_letter(l).terms()) {
        if (rest & mb) continue;
        int s = merge_sign(left, mb) * merge_sign(left | mb, right);
        if (pos & 1) s = -s;
        Scalar t = c * cb;
        out.add(rest | mb, s > 0 ? t : -t);
      }
      ++pos;
    }
  }
  return out;
}

}  // namespace hkt
