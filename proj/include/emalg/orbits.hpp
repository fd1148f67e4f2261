#ifndef EMALG_ORBITS_HPP
#define EMALG_ORBITS_HPP

#include "emalg/emap.hpp"

#include <string>
#include <vector>

namespace emalg {

struct IsotropyRecord {
    Point x;
    std::vector<size_t> stabilizer;
    std::vector<std::string> stabilizer_labels;
    Subspace gx, derived;
    StructureReport report;
    size_t z_dim = 0;  // dim g^x / [g^x, g^x]
};

IsotropyRecord isotropy(const GroupActionBundle& B, const Point& x, unsigned long seed = 0);
// g^{g.x} = g . g^x for every group element
bool isotropy_transport_holds(const GroupActionBundle& B, const Point& x);

// one subgroup (sorted elements) per conjugacy class, by order then elements
std::vector<std::vector<size_t>> subgroup_classes(const FiniteGroup& G);
std::vector<std::vector<size_t>> all_subgroups(const FiniteGroup& G);

enum class LocusKind { Empty, Finite, Infinite, Undetermined };
std::string locus_name(LocusKind k);

struct FixedLocus {
    LocusKind kind = LocusKind::Undetermined;
    std::vector<Point> points;          // the representable points of a finite locus
    std::vector<std::string> missing;   // e.g. "roots of t^2 + 1" outside the scalar field
    int dimension = -1;                 // for infinite loci when known
    std::string note;
};

// X^H, the common fixed points of the elements of H
FixedLocus fixed_locus(const GroupActionBundle& B, const std::vector<size_t>& H);

struct StratumRow {
    std::vector<size_t> subgroup;
    std::string name;       // element labels
    bool perfect = false;   // [g^H, g^H] = g^H
    size_t gH_dim = 0;
    FixedLocus locus;       // X^H
    LocusKind stratum = LocusKind::Undetermined;  // points with stabilizer exactly H
    std::vector<Point> stratum_points;
    bool contributes = false;
};

enum class TildeVerdict { Empty, Finite, Infinite, Undetermined };
std::string tilde_name(TildeVerdict v);

struct TildeReport {
    std::vector<StratumRow> rows;
    TildeVerdict verdict = TildeVerdict::Undetermined;
    std::vector<Point> representatives;  // one per orbit of X-tilde when finite
    bool representatives_complete = true;
    std::string note;
};

TildeReport tilde_analysis(const GroupActionBundle& B, size_t group_bound = 256);

// lexicographically least point of the orbit under the text order
Point canonical_representative(const GroupActionBundle& B, const Point& x);
bool point_less(const Point& a, const Point& b);

}  // namespace emalg

#endif
