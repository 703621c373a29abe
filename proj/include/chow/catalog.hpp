#pragma once

// Concrete rings and maps: the GO(2n) presentation and its relatives, plus
// a loader for user-supplied presentations.
//
// Variable names: "l" is the degree-1 class lambda, "c1".."c<k>" are Chern
// classes (deg c_i = i), "t1".."t<n>" are the torus classes (degree 1).

#include "chow/gradedring.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chow {

/// C(a, b), zero unless 0 <= b <= a.
Integer binomial(long a, long b);

ContextPtr go_context(unsigned n);
ContextPtr chern_context(unsigned k);
ContextPtr torus_context(unsigned n);
/// l, c2, c4, ..., c<2n>.
ContextPtr b_context(unsigned n);

/// rel_p for p = 1..2n, in go_context(n). rel_p has degree p.
std::vector<Polynomial> go_relations(unsigned n);

RingPresentation go_presentation(unsigned n);
/// Z[c1..ck] / (2 c_p : p odd).
RingPresentation o_presentation(unsigned k);
/// Z[l, t1..tn], no relations.
RingPresentation torus_presentation(unsigned n);
/// Z[l, c2, ..., c2n], no relations.
RingPresentation b_presentation(unsigned n);

/// Images of l, c1..c2n in the torus context: c_i goes to the degree-i part
/// of prod_j (1 + l + t_j)(1 - t_j).
struct ChernImageTable {
    unsigned n = 0;
    Polynomial lambda;
    std::vector<Polynomial> chern;  // chern[i-1] is the image of c_i
};
ChernImageTable chern_images(unsigned n);

/// GO presentation -> torus ring. Checked: every relation maps to the zero
/// polynomial, not just to zero in some range of degrees.
RingMapSpec torus_map(unsigned n);
/// GO presentation -> o_presentation(2n): l -> 0, c_i -> c_i.
RingMapSpec reduction_map(unsigned n);
/// b_presentation(n) -> GO presentation, the obvious inclusion.
RingMapSpec b_inclusion(unsigned n);

/// Degree-m monomials in l and the even Chern classes, in the GO context.
std::vector<Monomial> b_basis(unsigned n, unsigned m);

/// P tensor Z[l]: a degree-1 generator "l" placed first. Throws ContextError
/// if P already has a variable called "l".
RingPresentation kunneth_extend(const RingPresentation& p);

class PresentationParseError : public std::runtime_error {
public:
    PresentationParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                             message),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Text format, one item per line:
///   generator <name> <degree>
///   relation <expression>
///   # comment
/// All generators are collected before relations are parsed, so the order of
/// lines only matters among generators.
RingPresentation parse_presentation(std::string_view text, std::string name = {});
RingPresentation load_presentation(const std::filesystem::path& path);

}  // namespace chow
