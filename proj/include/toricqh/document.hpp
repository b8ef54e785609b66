#ifndef TORICQH_DOCUMENT_HPP
#define TORICQH_DOCUMENT_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polytope.hpp"

namespace toricqh {

enum class Mode { Fano, Nef };

inline std::string to_string(Mode m) { return m == Mode::Fano ? "fano" : "nef"; }

inline Mode parse_mode(const std::string& s) {
    if (s == "fano") return Mode::Fano;
    if (s == "nef") return Mode::Nef;
    fail(ErrorKind::Parse, "unknown mode '" + s + "' (expected fano or nef)");
}

/// Everything a polytope file carries: the facets plus optional reporting and quantum data.
struct PolytopeDocument {
    std::string name;
    int dim = 0;
    std::vector<Facet> facets;
    /// Named homology classes as expressions in x1..xN (their Poincare duals), in display order.
    std::vector<std::pair<std::string, std::string>> classes;
    /// Facet index (0-based) -> expression for Y_i.
    std::map<int, std::string> y_table;
    Mode mode = Mode::Fano;

    DelzantPolytope polytope() const { return DelzantPolytope::validate(dim, facets, name); }
};

} // namespace toricqh

#endif
