#include "qva/mlde.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qva {

Puiseux serre_derivative(const Puiseux& f, const Rat& w) {
  if (f.trunc() >= inf_trunc())
    throw std::invalid_argument("serre_derivative: input needs a finite truncation");
  Puiseux d = f.qderiv();
  if (w == 0) return d;
  return d + eisenstein(2, f.trunc()).scaled(w) * f;
}

Puiseux d_power(const Puiseux& f, int k) {
  Puiseux r = f;
  for (int i = 0; i < k; ++i) r = serre_derivative(r, Rat(2 * i));
  return r;
}

std::string BasisForm::name() const {
  std::ostringstream os;
  if (group == MLDEGroup::Gamma0_2) {
    os << "Theta(" << i << "," << j << ")";
  } else {
    os << "E4^" << a << "E6^" << b;
  }
  return os.str();
}

Puiseux BasisForm::series(const Rat& T) const {
  if (group == MLDEGroup::Gamma0_2) return theta_bar(i, j, T);
  Puiseux r = Puiseux::from_rat(1, T);
  if (a > 0) r *= eisenstein(4, T).pow_int(a);
  if (b > 0) r *= eisenstein(6, T).pow_int(b);
  return r.truncated(T);
}

std::vector<BasisForm> weight_basis(MLDEGroup g, int r) {
  std::vector<BasisForm> out;
  if (g == MLDEGroup::Gamma0_2) {
    for (int i = 0; 2 * i <= r; ++i) out.push_back({g, i, r - i, 0, 0});
  } else {
    for (int b = 0; 6 * b <= 2 * r; ++b) {
      if ((2 * r - 6 * b) % 4 != 0) continue;
      out.push_back({g, 0, 0, (2 * r - 6 * b) / 4, b});
    }
  }
  return out;
}

Puiseux MLDEOp::coefficient_series(int r, const Rat& T) const {
  Puiseux acc = Puiseux::zero(T);
  if (r < 1 || r > order) return acc;
  for (const auto& [w, b] : coeffs[static_cast<size_t>(r - 1)])
    acc += b.series(T).scaled(w);
  return acc;
}

Puiseux mlde_apply(const MLDEOp& op, const Puiseux& f) {
  Rat T = f.trunc();
  Puiseux acc = d_power(f, op.order);
  for (int r = 1; r <= op.order; ++r) {
    Puiseux c = op.coefficient_series(r, T);
    if (c.known_zero()) continue;
    acc += c * d_power(f, op.order - r);
  }
  return acc;
}

bool mlde_verify(const MLDEOp& op, const Puiseux& f, const Rat& through) {
  Puiseux r = mlde_apply(op, f);
  if (r.trunc() < through)
    throw MathError("mlde_verify: result only known through q^" + rat_str(r.trunc()));
  for (const auto& [e, c] : r.terms())
    if (e < through && !c.is_zero()) return false;
  return true;
}

MLDEOp mlde_fit(const std::vector<Puiseux>& solutions, int order, MLDEGroup group) {
  MLDEOp op;
  op.order = order;
  op.group = group;
  op.coeffs.resize(static_cast<size_t>(order));

  // Unknowns: one weight per basis form per order gap r.
  struct Unknown {
    int r;
    BasisForm form;
  };
  std::vector<Unknown> unknowns;
  for (int r = 1; r <= order; ++r)
    for (const auto& b : weight_basis(group, r)) unknowns.push_back({r, b});
  size_t m = unknowns.size();

  // Rows: one equation per q-exponent per solution,
  //   D^{(k)}f(e) + sum_u x_u (form_u * D^{(k-r_u)}f)(e) = 0.
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> rhs;
  for (const auto& f : solutions) {
    if (f.trunc() >= inf_trunc())
      throw std::invalid_argument("mlde_fit: solutions need finite truncation");
    if (!f.all_rational())
      throw std::invalid_argument("mlde_fit: solutions must have rational coefficients");
    Rat T = f.trunc();
    Puiseux lead = d_power(f, order);
    std::vector<Puiseux> cols;
    cols.reserve(m);
    Rat Trow = lead.trunc();
    for (const auto& u : unknowns) {
      Puiseux c = u.form.series(T) * d_power(f, order - u.r);
      Trow = std::min(Trow, c.trunc());
      cols.push_back(std::move(c));
    }
    std::set<Rat> exps;
    for (const auto& [e, c] : lead.terms())
      if (e < Trow) exps.insert(e);
    for (const auto& col : cols)
      for (const auto& [e, c] : col.terms())
        if (e < Trow) exps.insert(e);
    for (const Rat& e : exps) {
      std::vector<Rat> row(m);
      for (size_t u = 0; u < m; ++u)
        row[u] = e < cols[u].trunc() ? cols[u].coefficient(e).to_rational() : Rat(0);
      A.push_back(std::move(row));
      rhs.push_back(-lead.coefficient(e).to_rational());
    }
  }

  // Gaussian elimination with full pivoting.
  size_t rows = A.size();
  std::vector<size_t> col_of_pivot;  // pivot column per pivot row
  std::vector<size_t> col_perm(m);
  for (size_t c = 0; c < m; ++c) col_perm[c] = c;
  size_t rank = 0;
  for (size_t pc = 0; pc < m && rank < rows; ++pc) {
    // Find any nonzero pivot in the remaining block.
    size_t pr = rank, pcol = m;
    for (size_t c = pc; c < m && pcol == m; ++c)
      for (size_t r = rank; r < rows; ++r)
        if (A[r][col_perm[c]] != 0) {
          pr = r;
          pcol = c;
          break;
        }
    if (pcol == m) break;
    std::swap(col_perm[pc], col_perm[pcol]);
    std::swap(A[rank], A[pr]);
    std::swap(rhs[rank], rhs[pr]);
    size_t c0 = col_perm[pc];
    Rat inv = Rat(1) / A[rank][c0];
    for (size_t c = 0; c < m; ++c) A[rank][c] *= inv;
    rhs[rank] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][c0] == 0) continue;
      Rat fct = A[r][c0];
      for (size_t c = 0; c < m; ++c) A[r][c] -= fct * A[rank][c];
      rhs[r] -= fct * rhs[rank];
    }
    ++rank;
  }
  if (rank < m) throw MathError("mlde_fit: underdetermined system (rank deficiency)");
  for (size_t r = rank; r < rows; ++r)
    if (rhs[r] != 0) throw MathError("mlde_fit: inconsistent system (no such operator)");

  std::vector<Rat> x(m);
  for (size_t p = 0; p < rank; ++p) x[col_perm[p]] = rhs[p];
  for (size_t u = 0; u < m; ++u) {
    if (x[u] == 0) continue;
    op.coeffs[static_cast<size_t>(unknowns[u].r - 1)].emplace_back(x[u], unknowns[u].form);
  }
  return op;
}

}  // namespace qva
