#include "ribcat/center.hpp"

namespace ribcat {

Morphism local_induction_idempotent(const FrobeniusAlgebra& a, const ObjectSum& u, Side side) {
  // conjugation by the dual-basis bubble: the right leg of Delta o eta crosses
  // the algebra line once and wraps the U line before multiplying back
  auto cat = a.cat;
  bool inv = (side == Side::left);
  Morphism idA = identity(cat, a.t1());
  Morphism idU = identity(cat, Tuple{u});
  Morphism de = compose(a.delta, a.eta);  // () -> (A,A)
  Morphism step1 = tensor(de, tensor(idA, idU));                       // (A,U) -> (A,A,A,U)
  Morphism step2 = tensor(idA, tensor(braid(a.obj, a.obj, inv), idU)); // -> (A,A,A,U)
  Morphism step3 = tensor(idA, tensor(idA, braid(a.obj, u, inv)));     // -> (A,A,U,A)
  Morphism step4 = tensor(idA, tensor(idA, braid(u, a.obj, inv)));     // -> (A,A,A,U)
  Morphism step5 = tensor(a.m, tensor(idA, idU));                      // -> (A,A,U)
  Morphism step6 = tensor(a.m, idU);                                   // -> (A,U)
  return compose(step6,
                 compose(step5, compose(step4, compose(step3, compose(step2, step1)))));
}

Morphism central_idempotent(const FrobeniusAlgebra& a, Side side) {
  auto cat = a.cat;
  bool inv = (side == Side::left);
  Morphism idA = identity(cat, a.t1());
  Morphism de = compose(a.delta, a.eta);
  Morphism step1 = tensor(de, idA);                       // (A) -> (A,A,A)
  Morphism step2 = tensor(idA, braid(a.obj, a.obj, inv)); // -> (A,A,A)
  Morphism step3 = tensor(a.m, idA);                      // -> (A,A)
  return compose(a.m, compose(step3, compose(step2, step1)));
}

CenterResult center(const FrobeniusAlgebra& a, Side side) {
  auto cat = a.cat;
  CenterResult out;
  out.side = side;
  out.P = central_idempotent(a, side);
  ImageSplit split = image_of_idempotent(out.P);
  out.e = split.e;
  out.r = split.r;
  FrobeniusAlgebra C;
  C.cat = cat;
  C.obj = split.obj;
  double zeta = C.obj.qdim() / a.dim();
  Morphism ee = tensor(out.e, out.e);
  Morphism rr = tensor(out.r, out.r);
  C.m = compose(out.r, compose(a.m, ee));
  C.eta = compose(out.r, a.eta);
  C.delta = compose(rr, compose(a.delta, out.e)) * (1.0 / zeta);
  C.eps = compose(a.eps, out.e) * zeta;
  out.C = std::move(C);
  return out;
}

LocalInduction local_induction_object(const FrobeniusAlgebra& a, const ObjectSum& u, Side side) {
  Morphism P = local_induction_idempotent(a, u, side);
  ImageSplit split = image_of_idempotent(P);
  return LocalInduction{split.obj, split.e, split.r};
}

Scalar s_pairing(const CategoryPtr& cat, const ObjectSum& u, const ObjectSum& a) {
  Scalar s = 0;
  for (auto& [ul, um] : u.mult)
    for (auto& [al, am] : a.mult) s += double(um) * double(am) * s_formula(*cat, ul, al);
  return s;
}

double dim_local_induction_check(const FrobeniusAlgebra& a, const ObjectSum& u) {
  Morphism P = local_induction_idempotent(a, u, Side::left);
  Scalar dimE = trace(P);
  Scalar target = s_pairing(a.cat, u, a.obj);
  return std::abs(dimE - target);
}

namespace {

int bimodule_hom_dim(const FrobeniusAlgebra& a, Label j, Label i) {
  // dim Hom_{A|A}(alpha^-(U_j), alpha^+(U_i))
  auto cat = a.cat;
  ObjectSum uj(cat, j), ui(cat, i);
  Morphism idA = identity(cat, a.t1());
  Morphism idUj = identity(cat, Tuple{uj});
  Morphism idUi = identity(cat, Tuple{ui});
  Morphism rho_minus = compose(tensor(a.m, idUj), tensor(idA, braid(uj, a.obj, true)));
  Morphism rho_plus = compose(tensor(a.m, idUi), tensor(idA, braid(ui, a.obj, false)));
  auto left = [&](const Morphism& f) {
    return compose(f, tensor(a.m, idUj)) - compose(tensor(a.m, idUi), tensor(idA, f));
  };
  auto right = [&](const Morphism& f) {
    return compose(f, rho_minus) - compose(rho_plus, tensor(f, idA));
  };
  auto sols = solve_morphism_space(cat, Tuple{a.obj, uj}, Tuple{a.obj, ui}, {left, right});
  return int(sols.size());
}

}  // namespace

Eigen::MatrixXi alpha_z_matrix(const FrobeniusAlgebra& a) {
  auto cat = a.cat;
  const int rk = cat->rank;
  Eigen::MatrixXi z1(rk, rk), z2(rk, rk);
  for (Label j = 0; j < rk; ++j) {
    LocalInduction e = local_induction_object(a, ObjectSum(cat, j), Side::left);
    for (Label i = 0; i < rk; ++i) z1(i, j) = e.obj.mult_of(i);
  }
  for (Label i = 0; i < rk; ++i)
    for (Label j = 0; j < rk; ++j) z2(i, j) = bimodule_hom_dim(a, j, i);
  if (z1 != z2)
    throw error("OracleDisagreement",
                "Z~ from E^l ranks and from bimodule intertwiners disagree for an algebra in " +
                    cat->name);
  return z1;
}

int z_multiplicativity_check(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
  Eigen::MatrixXi za = alpha_z_matrix(a);
  Eigen::MatrixXi zb = alpha_z_matrix(b);
  Eigen::MatrixXi zab = alpha_z_matrix(tensor_algebra(a, b, +1));
  return (zab - za * zb).cwiseAbs().maxCoeff();
}

LiftedAlgebra lift_algebra_E_full(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b,
                                  Side side) {
  auto cat = a.cat;
  LocalInduction li = local_induction_object(a, b.obj, side);
  Morphism idA = identity(cat, a.t1());
  Morphism idB = identity(cat, b.t1());
  bool left = (side == Side::left);
  Morphism swap_m = left ? braid(b.obj, a.obj, true) : braid(b.obj, a.obj, false);
  Morphism swap_d = left ? braid(a.obj, b.obj, false) : braid(a.obj, b.obj, true);
  Morphism m_t = compose(tensor(a.m, b.m), tensor(idA, tensor(swap_m, idB)));
  Morphism d_t = compose(tensor(idA, tensor(swap_d, idB)), tensor(a.delta, b.delta));

  FrobeniusAlgebra out;
  out.cat = cat;
  out.obj = li.obj;
  out.m = compose(li.r, compose(m_t, tensor(li.e, li.e)));
  out.eta = compose(li.r, tensor(a.eta, b.eta));
  double xi = li.obj.qdim() / (a.dim() * b.dim());
  out.delta = compose(tensor(li.r, li.r), compose(d_t, li.e)) * (1.0 / xi);
  out.eps = compose(tensor(a.eps, b.eps), li.e) * xi;
  return LiftedAlgebra{std::move(out), std::move(li)};
}

FrobeniusAlgebra lift_algebra_E(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b, Side side) {
  return lift_algebra_E_full(a, b, side).alg;
}

TensorCenterReport tensor_center_check(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
  TensorCenterReport rep;
  FrobeniusAlgebra ab = tensor_algebra(a, b, +1);
  CenterResult cl_ab = center(ab, Side::left);
  CenterResult cr_ab = center(ab, Side::right);
  CenterResult cl_b = center(b, Side::left);
  CenterResult cr_a = center(a, Side::right);
  LocalInduction el = local_induction_object(a, cl_b.C.obj, Side::left);
  LocalInduction er = local_induction_object(b, cr_a.C.obj, Side::right);
  rep.object_match_l = (cl_ab.C.obj == el.obj);
  rep.object_match_r = (cr_ab.C.obj == er.obj);
  FrobeniusAlgebra lifted_l = lift_algebra_E(a, cl_b.C, Side::left);
  auto flags = [](const FrobeniusAlgebra& x) {
    return std::array<bool, 5>{check_algebra(x).ok, check_frobenius(x).ok, check_special(x).ok,
                               check_symmetric(x).ok, check_commutative(x).ok};
  };
  rep.flags_match = (flags(cl_ab.C) == flags(lifted_l));
  rep.detail = "C_l(AxB)=" + cl_ab.C.obj.str() + " E^l_A(C_l(B))=" + el.obj.str() +
               " C_r(AxB)=" + cr_ab.C.obj.str() + " E^r_B(C_r(A))=" + er.obj.str();
  return rep;
}

}  // namespace ribcat
