#include "freecat/axioms.hpp"

namespace freecat {

namespace {

using Pair = std::pair<MorPtr, MorPtr>;

EqSchema triangle_schema() {
  return {"triangle",
          {"X", "Y"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            MorPtr lhs = m_seq(m_assoc(X, t_unit(), Y),
                               m_par(m_id(X), m_leftu(Y)));
            MorPtr rhs = m_par(m_rightu(X), m_id(Y));
            return {lhs, rhs};
          }};
}

EqSchema pentagon_schema() {
  return {"pentagon",
          {"W", "X", "Y", "Z"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& W = v[0];
            const TypePtr& X = v[1];
            const TypePtr& Y = v[2];
            const TypePtr& Z = v[3];
            MorPtr lhs = m_seq(m_assoc(t_tensor(W, X), Y, Z),
                               m_assoc(W, X, t_tensor(Y, Z)));
            MorPtr rhs = m_seq(
                m_seq(m_par(m_assoc(W, X, Y), m_id(Z)),
                      m_assoc(W, t_tensor(X, Y), Z)),
                m_par(m_id(W), m_assoc(X, Y, Z)));
            return {lhs, rhs};
          }};
}

EqSchema hexagon1_schema() {
  return {"hexagon-1",
          {"X", "Y", "Z"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            const TypePtr& Z = v[2];
            MorPtr lhs = m_seq(m_seq(m_assoc(X, Y, Z),
                                     m_braid(X, t_tensor(Y, Z))),
                               m_assoc(Y, Z, X));
            MorPtr rhs = m_seq(m_seq(m_par(m_braid(X, Y), m_id(Z)),
                                     m_assoc(Y, X, Z)),
                               m_par(m_id(Y), m_braid(X, Z)));
            return {lhs, rhs};
          }};
}

EqSchema hexagon2_schema() {
  return {"hexagon-2",
          {"X", "Y", "Z"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            const TypePtr& Z = v[2];
            MorPtr lhs = m_seq(m_seq(m_unassoc(X, Y, Z),
                                     m_braid(t_tensor(X, Y), Z)),
                               m_unassoc(Z, X, Y));
            MorPtr rhs = m_seq(m_seq(m_par(m_id(X), m_braid(Y, Z)),
                                     m_unassoc(X, Z, Y)),
                               m_par(m_braid(X, Z), m_id(Y)));
            return {lhs, rhs};
          }};
}

EqSchema symmetry_schema() {
  return {"symmetry",
          {"X", "Y"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            MorPtr lhs = m_seq(m_braid(X, Y), m_braid(Y, X));
            MorPtr rhs = m_id(t_tensor(X, Y));
            return {lhs, rhs};
          }};
}

EqSchema dup_del_right_schema() {
  return {"dup-del-right",
          {"X"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            MorPtr lhs = m_seq(m_dup(X), m_par(m_id(X), m_del(X)));
            MorPtr rhs = m_unrightu(X);
            return {lhs, rhs};
          }};
}

EqSchema dup_del_left_schema() {
  return {"dup-del-left",
          {"X"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            MorPtr lhs = m_seq(m_dup(X), m_par(m_del(X), m_id(X)));
            MorPtr rhs = m_unleftu(X);
            return {lhs, rhs};
          }};
}

EqSchema pair_proj_id_schema() {
  return {"pair-proj-id",
          {"X", "Y"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            MorPtr lhs = m_pair(m_proj1(X, Y), m_proj2(X, Y));
            MorPtr rhs = m_id(t_tensor(X, Y));
            return {lhs, rhs};
          }};
}

EqSchema dup_proj1_schema() {
  return {"dup-proj-1",
          {"X"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            MorPtr lhs = m_seq(m_dup(X), m_proj1(X, X));
            MorPtr rhs = m_id(X);
            return {lhs, rhs};
          }};
}

EqSchema dup_proj2_schema() {
  return {"dup-proj-2",
          {"X"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            MorPtr lhs = m_seq(m_dup(X), m_proj2(X, X));
            MorPtr rhs = m_id(X);
            return {lhs, rhs};
          }};
}

EqSchema dup_symmetry_schema() {
  return {"dup-symmetry",
          {"X"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            MorPtr lhs = m_seq(m_dup(X), m_braid(X, X));
            MorPtr rhs = m_dup(X);
            return {lhs, rhs};
          }};
}

EqSchema curry_ev_schema() {
  return {"curry-ev",
          {"X", "Y"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            MorPtr lhs = m_curry(m_ev(X, Y));
            MorPtr rhs = m_id(t_hom(X, Y));
            return {lhs, rhs};
          }};
}

EqSchema uncurry_id_schema() {
  return {"uncurry-id",
          {"X", "Y"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            MorPtr lhs = m_uncurry(m_id(t_hom(X, Y)));
            MorPtr rhs = m_ev(X, Y);
            return {lhs, rhs};
          }};
}

EqSchema zigzag_right_schema() {
  return {"zigzag-right",
          {"X"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            TypePtr Xd = t_dual(X);
            MorPtr lhs = m_seq(
                m_seq(m_seq(m_seq(m_unrightu(X), m_par(m_id(X), m_cup(X))),
                            m_unassoc(X, Xd, X)),
                      m_par(m_cap(X), m_id(X))),
                m_leftu(X));
            MorPtr rhs = m_id(X);
            return {lhs, rhs};
          }};
}

EqSchema zigzag_left_schema() {
  return {"zigzag-left",
          {"X"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            TypePtr Xd = t_dual(X);
            MorPtr lhs = m_seq(
                m_seq(m_seq(m_seq(m_unleftu(Xd), m_par(m_cup(X), m_id(Xd))),
                            m_assoc(Xd, X, Xd)),
                      m_par(m_id(Xd), m_cap(X))),
                m_rightu(Xd));
            MorPtr rhs = m_id(Xd);
            return {lhs, rhs};
          }};
}

} // namespace

EqSchema yang_baxter_schema() {
  return {"yang-baxter",
          {"X", "Y", "Z"},
          [](const std::vector<TypePtr>& v) -> Pair {
            const TypePtr& X = v[0];
            const TypePtr& Y = v[1];
            const TypePtr& Z = v[2];
            MorPtr lhs = m_seq(
                m_seq(m_seq(m_seq(m_seq(m_par(m_braid(X, Y), m_id(Z)),
                                        m_assoc(Y, X, Z)),
                                  m_par(m_id(Y), m_braid(X, Z))),
                            m_unassoc(Y, Z, X)),
                      m_par(m_braid(Y, Z), m_id(X))),
                m_assoc(Z, Y, X));
            MorPtr rhs = m_seq(
                m_seq(m_seq(m_seq(m_seq(m_assoc(X, Y, Z),
                                        m_par(m_id(X), m_braid(Y, Z))),
                                  m_unassoc(X, Z, Y)),
                            m_par(m_braid(X, Z), m_id(Y))),
                      m_assoc(Z, X, Y)),
                m_par(m_id(Z), m_braid(X, Y)));
            return {lhs, rhs};
          }};
}

std::vector<EqSchema> coherence_axioms(Mode mode) {
  std::vector<EqSchema> out;
  out.push_back(triangle_schema());
  out.push_back(pentagon_schema());
  if (mode_has_braiding(mode)) {
    out.push_back(hexagon1_schema());
    out.push_back(hexagon2_schema());
  }
  if (mode_braiding_symmetric(mode)) {
    out.push_back(symmetry_schema());
  }
  if (mode_has_cartesian(mode)) {
    out.push_back(dup_del_right_schema());
    out.push_back(dup_del_left_schema());
    out.push_back(pair_proj_id_schema());
    out.push_back(dup_proj1_schema());
    out.push_back(dup_proj2_schema());
    out.push_back(dup_symmetry_schema());
  }
  if (mode_has_closed(mode)) {
    out.push_back(curry_ev_schema());
    out.push_back(uncurry_id_schema());
  }
  if (mode_has_duals(mode)) {
    out.push_back(zigzag_right_schema());
    out.push_back(zigzag_left_schema());
  }
  return out;
}

} // namespace freecat
