#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multitime/higher_order.hpp"
#include "multitime/minimal_surface.hpp"
#include "multitime/second_order.hpp"
#include "multitime/solution_grid.hpp"

namespace multitime::io {

/// Integer-coefficient polynomial in t1..tm, e.g. "2*t1^2 - t1*t2 + 3".
class Polynomial {
public:
    /// Throws ParseError with the column of the offending character.
    static Polynomial parse(const std::string& text, std::size_t variables);
    static Polynomial constant(std::int64_t c, std::size_t variables);
    /// The single variable t_{axis+1}.
    static Polynomial variable(std::size_t axis, std::size_t variables);

    std::size_t variables() const { return variables_; }
    double evaluate(std::span<const Coord> t) const;
    std::string to_string() const;

    using Exponents = std::vector<int>;
    const std::map<Exponents, std::int64_t>& terms() const { return terms_; }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;

private:
    explicit Polynomial(std::size_t variables) : variables_(variables) {}
    void prune();

    std::size_t variables_;
    std::map<Exponents, std::int64_t> terms_;
};

// ---- CSV -----------------------------------------------------------------

/// %.17g, the shortest printf form that round-trips every double.
std::string format_double(double v);

/// Header t1..tm,x1..xn, one row per point in lexicographic order.
void write_grid_csv(std::ostream& os, const SolutionGrid& grid, const std::string& value_prefix = "x");
void write_grid_csv(const std::filesystem::path& path, const SolutionGrid& grid);

/// Inverse of write_grid_csv. Rows must cover a full window in lexicographic order.
SolutionGrid read_grid_csv(std::istream& is, const std::string& source = "<csv>");
SolutionGrid read_grid_csv(const std::filesystem::path& path);

// ---- Meshes --------------------------------------------------------------

/// Text mesh: a header line "M N h1 h2", then (M+1)(N+1) coordinate lines,
/// m-major (x_{00}, x_{01}, ..., x_{0N}, x_{10}, ...). '#' starts a comment.
SurfaceGrid read_mesh(std::istream& is, const std::string& source = "<mesh>");
SurfaceGrid read_mesh(const std::filesystem::path& path);
void write_mesh(std::ostream& os, const SurfaceGrid& g);
void write_mesh(const std::filesystem::path& path, const SurfaceGrid& g);

/// Wavefront OBJ: one vertex per node (first three coordinates), two triangles per quad.
void write_obj(std::ostream& os, const SurfaceGrid& g);
void write_obj(const std::filesystem::path& path, const SurfaceGrid& g);

// ---- Problem files -------------------------------------------------------

enum class ProblemKind { FirstOrder, SecondOrder, OrderK, Special, Surface };

std::string to_string(ProblemKind kind);

enum class SpecialConstruction { SumPower, Root, EigenModes, EpsilonPower };

struct SpecialSpec {
    SpecialConstruction construction;
    Matrix matrix;
    Vector x0;
    std::vector<Coord> epsilon;  // EpsilonPower
    std::size_t axis = 0;        // EigenModes, 0-based
};

struct SurfaceSpec {
    std::filesystem::path mesh;
    std::string metric = "euclidean";
    NewtonOptions newton;
};

/// A parsed problem file. Exactly one of the kind-specific members is set.
struct Problem {
    ProblemKind kind;
    std::filesystem::path source;
    std::size_t arity = 0;
    std::size_t dimension = 0;
    std::optional<LatticeWindow> window;
    double tolerance = kDefaultTolerance;

    std::optional<FirstOrderProblem> first_order;
    std::optional<SecondOrderProblem> second_order;
    std::optional<OrderKProblem> order_k;
    std::optional<SpecialSpec> special;
    std::optional<SurfaceSpec> surface;

    /// The boundary of whichever recurrence the file describes (none for special/surface).
    const BoundaryData* boundary() const;
};

/// Parses YAML text. Relative table and mesh paths resolve against `base_dir`.
/// Errors carry "source:line:column".
Problem parse_problem(const std::string& text, const std::string& source = "<problem>",
                      const std::filesystem::path& base_dir = ".");
Problem load_problem(const std::filesystem::path& path);

/// "6,6" or "6x6" -> LatticeWindow.
LatticeWindow parse_window(const std::string& text);

/// "1,2;3,4" -> [[1,2],[3,4]] (rows separated by ';').
Matrix parse_matrix(const std::string& text);

/// Names accepted by `coefficient: {rule: ...}`.
std::vector<std::string> coefficient_rule_names();
MatrixSequence named_coefficient_rule(const std::string& name, std::size_t arity, std::size_t dimension);

}  // namespace multitime::io
