#ifndef TORICQH_EXAMPLES_HPP
#define TORICQH_EXAMPLES_HPP

#include <string>
#include <vector>

#include "document.hpp"

namespace toricqh::examples {

inline Facet facet(IntVec normal, const Rat& support, std::string label) {
    return Facet{std::move(normal), support, std::move(label)};
}

/// Support of the blowup's first two facets that puts the centroid at the origin.
inline Rat blowup_epsilon(const Rat& mu) {
    Rat mu2 = mu * mu;
    Rat mu4 = mu2 * mu2;
    return (1 - mu4 * mu2) / (3 * (1 - mu4));
}

/// One-point blowup of CP^2 with omega(L) = 1 and exceptional area mu^2, 0 < mu < 1.
inline PolytopeDocument blowup_cp2(const Rat& mu = rat(1, 2)) {
    if (mu <= 0 || mu >= 1) fail(ErrorKind::InvalidArgument, "blowup_cp2 needs 0 < mu < 1");
    Rat eps = blowup_epsilon(mu);
    PolytopeDocument d;
    d.name = "blowup_cp2";
    d.dim = 2;
    d.facets = {facet({-1, 0}, eps, "B"), facet({0, -1}, eps, "B"), facet({1, 1}, 1 - 2 * eps, "L"),
                facet({-1, -1}, 2 * eps - mu * mu, "E")};
    d.classes = {{"B", "x1"}, {"L", "x3"}, {"E", "x4"}};
    return d;
}

/// S^2 x S^2 with omega(A) = mu (first factor) and omega(B) = 1.
inline PolytopeDocument s2xs2(const Rat& mu = 2) {
    if (mu <= 0) fail(ErrorKind::InvalidArgument, "s2xs2 needs mu > 0");
    PolytopeDocument d;
    d.name = "s2xs2";
    d.dim = 2;
    d.facets = {facet({1, 0}, mu / 2, "B"), facet({-1, 0}, mu / 2, "B"), facet({0, 1}, rat(1, 2), "A"),
                facet({0, -1}, rat(1, 2), "A")};
    d.classes = {{"B", "x1"}, {"A", "x3"}};
    return d;
}

/// CP^2 with omega(L) = mu (default 1), centred.
inline PolytopeDocument cp2(const Rat& mu = 1) {
    if (mu <= 0) fail(ErrorKind::InvalidArgument, "cp2 needs mu > 0");
    PolytopeDocument d;
    d.name = "cp2";
    d.dim = 2;
    Rat s = mu / 3;
    d.facets = {facet({-1, 0}, s, "L"), facet({0, -1}, s, "L"), facet({1, 1}, s, "L")};
    d.classes = {{"L", "x1"}};
    return d;
}

/// S^2 of area mu (default 1).
inline PolytopeDocument s2(const Rat& mu = 1) {
    if (mu <= 0) fail(ErrorKind::InvalidArgument, "s2 needs mu > 0");
    PolytopeDocument d;
    d.name = "s2";
    d.dim = 1;
    d.facets = {facet({1}, mu / 2, "p"), facet({-1}, mu / 2, "p")};
    d.classes = {{"p", "x1"}};
    return d;
}

inline Rat hirzebruch_epsilon(const Rat& mu) { return mu / 2 + 1 / (6 * mu); }

/// The even Hirzebruch surface F_2, symplectomorphic to S^2 x S^2 with omega(A) = mu > 1.
inline PolytopeDocument hirzebruch2(const Rat& mu = 2) {
    if (mu <= 1) fail(ErrorKind::InvalidArgument, "hirzebruch2 needs mu > 1");
    Rat eps = hirzebruch_epsilon(mu);
    PolytopeDocument d;
    d.name = "hirzebruch2";
    d.dim = 2;
    d.facets = {facet({0, 1}, rat(1, 2) + mu / 2 - eps, "A+B"), facet({0, -1}, eps + rat(1, 2) - mu / 2, "A-B"),
                facet({1, -1}, eps, "B"), facet({-1, -1}, eps, "B")};
    d.classes = {{"A", "x1 - x3"}, {"B", "x3"}};
    std::string s = "t^{" + Rat(mu - 1).get_str() + "}";
    d.y_table = {{0, "x1"}, {1, "x2 / (1 - " + s + ")"}, {2, "x3 - x2 * " + s + " / (1 - " + s + ")"},
                 {3, "x4 - x2 * " + s + " / (1 - " + s + ")"}};
    d.mode = Mode::Nef;
    return d;
}

inline std::vector<std::string> names() { return {"s2", "cp2", "blowup_cp2", "s2xs2", "hirzebruch2"}; }

inline PolytopeDocument by_name(const std::string& name, const std::optional<Rat>& mu = std::nullopt) {
    if (name == "blowup_cp2") return mu ? blowup_cp2(*mu) : blowup_cp2();
    if (name == "s2xs2") return mu ? s2xs2(*mu) : s2xs2();
    if (name == "cp2") return mu ? cp2(*mu) : cp2();
    if (name == "s2") return mu ? s2(*mu) : s2();
    if (name == "hirzebruch2") return mu ? hirzebruch2(*mu) : hirzebruch2();
    fail(ErrorKind::InvalidArgument, "unknown example '" + name + "'");
}

} // namespace toricqh::examples

#endif
