#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "multitime/io.hpp"

namespace multitime::io {

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::FirstOrder: return "first_order";
        case ProblemKind::SecondOrder: return "second_order";
        case ProblemKind::OrderK: return "order_k";
        case ProblemKind::Special: return "special";
        case ProblemKind::Surface: return "surface";
    }
    return "?";
}

const BoundaryData* Problem::boundary() const {
    if (first_order) return &first_order->boundary;
    if (second_order) return &second_order->boundary;
    if (order_k) return &order_k->boundary;
    return nullptr;
}

std::vector<std::string> coefficient_rule_names() { return {"identity", "damped", "alternating", "rotation"}; }

MatrixSequence named_coefficient_rule(const std::string& name, std::size_t arity, std::size_t dimension) {
    const auto n = static_cast<Eigen::Index>(dimension);
    auto coordinate_sum = [](const MultiIndex& t) {
        Coord s = 0;
        for (Coord c : t.components()) s += c;
        return s;
    };
    if (name == "identity") return MatrixSequence::constant(arity, Matrix::Identity(n, n));
    if (name == "damped")  // I / (1 + |t|)
        return MatrixSequence::rule(arity, dimension, [n, coordinate_sum](const MultiIndex& t) {
            return Matrix(Matrix::Identity(n, n) / (1.0 + static_cast<double>(coordinate_sum(t))));
        });
    if (name == "alternating")  // (-1)^{|t|} I
        return MatrixSequence::rule(arity, dimension, [n, coordinate_sum](const MultiIndex& t) {
            return Matrix((coordinate_sum(t) % 2 == 0 ? 1.0 : -1.0) * Matrix::Identity(n, n));
        });
    if (name == "rotation") {  // planar rotation by |t| / 10 radians
        if (dimension != 2) throw DimensionMismatch("rule 'rotation' needs dimension 2");
        return MatrixSequence::rule(arity, dimension, [coordinate_sum](const MultiIndex& t) {
            const double th = 0.1 * static_cast<double>(coordinate_sum(t));
            Matrix r(2, 2);
            r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
            return r;
        });
    }
    std::string known;
    for (const auto& k : coefficient_rule_names()) known += (known.empty() ? "" : ", ") + k;
    throw InputError("unknown coefficient rule '" + name + "' (known: " + known + ")");
}

namespace {

class Reader {
public:
    Reader(std::string source, std::filesystem::path base_dir) : source_(std::move(source)), base_(std::move(base_dir)) {}

    [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const {
        const YAML::Mark mark = at.Mark();
        std::ostringstream os;
        os << source_;
        if (!mark.is_null()) os << ":" << mark.line + 1 << ":" << mark.column + 1;
        os << ": " << what;
        throw ParseError(os.str());
    }

    const YAML::Node& root() const { return root_; }
    void set_root(YAML::Node n) { root_ = std::move(n); }

    YAML::Node require(const YAML::Node& map, const std::string& key) const {
        YAML::Node v = map[key];
        if (!v) fail(map, "missing required field '" + key + "'");
        return v;
    }

    template <class T>
    T scalar(const YAML::Node& n, const std::string& what) const {
        if (!n.IsScalar()) fail(n, what + " must be a scalar");
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            fail(n, "cannot read " + what + " from '" + n.Scalar() + "'");
        }
    }

    double number(const YAML::Node& n, const std::string& what) const {
        const double v = scalar<double>(n, what);
        if (!std::isfinite(v)) fail(n, what + " must be finite");
        return v;
    }

    std::size_t count(const YAML::Node& n, const std::string& what, std::size_t min) const {
        const auto v = scalar<long long>(n, what);
        if (v < static_cast<long long>(min)) fail(n, what + " must be >= " + std::to_string(min));
        return static_cast<std::size_t>(v);
    }

    std::filesystem::path path(const YAML::Node& n) const {
        std::filesystem::path p = scalar<std::string>(n, "path");
        if (p.is_relative()) p = base_ / p;
        if (!std::filesystem::exists(p)) fail(n, "referenced file '" + p.string() + "' does not exist");
        return p;
    }

    LatticeWindow window(const YAML::Node& n, std::size_t arity) const {
        std::vector<Coord> bounds;
        if (n.IsScalar()) {
            try {
                LatticeWindow w = parse_window(n.Scalar());
                bounds.assign(w.bounds().begin(), w.bounds().end());
            } catch (const ParseError& e) {
                fail(n, e.what());
            }
        } else if (n.IsSequence()) {
            for (const auto& b : n) bounds.push_back(static_cast<Coord>(count(b, "window bound", 1)));
        } else {
            fail(n, "window must be a list of bounds or a string like 6x6");
        }
        if (bounds.size() != arity)
            fail(n, "window has " + std::to_string(bounds.size()) + " bounds, arity is " + std::to_string(arity));
        return LatticeWindow(std::move(bounds));
    }

    Matrix literal_matrix(const YAML::Node& n, std::size_t dim, const std::string& what) const {
        if (!n.IsSequence() || n.size() != dim) fail(n, what + " must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
        Matrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            const YAML::Node row = n[i];
            if (!row.IsSequence() || row.size() != dim) fail(row, what + " row must have " + std::to_string(dim) + " entries");
            for (std::size_t j = 0; j < dim; ++j)
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(row[j], what + " entry");
        }
        return a;
    }

    Vector literal_vector(const YAML::Node& n, std::size_t dim, const std::string& what) const {
        if (n.IsScalar() && dim == 1) return Vector::Constant(1, number(n, what));
        if (!n.IsSequence() || n.size() != dim) fail(n, what + " must be a list of " + std::to_string(dim) + " numbers");
        Vector v(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = number(n[i], what + " entry");
        return v;
    }

    Polynomial polynomial(const YAML::Node& n, std::size_t variables) const {
        if (!n.IsScalar()) fail(n, "polynomial entry must be a scalar");
        try {
            return Polynomial::parse(n.Scalar(), variables);
        } catch (const ParseError& e) {
            fail(n, e.what());
        }
    }

    // Component list for an n-vector: numbers or polynomial strings.
    std::vector<Polynomial> polynomial_components(const YAML::Node& n, std::size_t dim, std::size_t variables) const {
        std::vector<Polynomial> out;
        if (n.IsScalar() && dim == 1) {
            out.push_back(polynomial(n, variables));
            return out;
        }
        if (!n.IsSequence() || n.size() != dim)
            fail(n, "expected " + std::to_string(dim) + " component(s)");
        for (const auto& c : n) out.push_back(polynomial(c, variables));
        return out;
    }

    static Vector evaluate(const std::vector<Polynomial>& components, std::span<const Coord> t) {
        Vector v(static_cast<Eigen::Index>(components.size()));
        for (std::size_t i = 0; i < components.size(); ++i) v[static_cast<Eigen::Index>(i)] = components[i].evaluate(t);
        return v;
    }

    bool all_numeric(const YAML::Node& n) const {
        if (n.IsScalar()) {
            try {
                (void)n.as<double>();
                return true;
            } catch (const YAML::Exception&) {
                return false;
            }
        }
        if (n.IsSequence()) {
            for (const auto& c : n)
                if (!all_numeric(c)) return false;
            return true;
        }
        return false;
    }

    VectorSequence table_vector(const YAML::Node& at, std::size_t arity, std::size_t dim) const {
        SolutionGrid grid = [&] {
            try {
                return read_grid_csv(path(at));
            } catch (const InputError& e) {
                fail(at, e.what());
            }
        }();
        if (grid.window().arity() != arity)
            fail(at, "table has " + std::to_string(grid.window().arity()) + " index columns, expected " + std::to_string(arity));
        if (grid.dimension() != dim)
            fail(at, "table has " + std::to_string(grid.dimension()) + " value columns, expected " + std::to_string(dim));
        return VectorSequence::table(grid.window(), grid.values());
    }

    // A full vector sequence over N^arity.
    VectorSequence vector_sequence(const YAML::Node& n, std::size_t arity, std::size_t dim) const {
        if (n.IsMap()) {
            if (n["constant"]) return VectorSequence::constant(arity, literal_vector(n["constant"], dim, "constant"));
            if (n["polynomial"]) return polynomial_sequence(n["polynomial"], arity, dim);
            if (n["table"]) return table_vector(n["table"], arity, dim);
            fail(n, "vector spec must be a list, or a map with constant, polynomial or table");
        }
        if (all_numeric(n)) return VectorSequence::constant(arity, literal_vector(n, dim, "vector"));
        return polynomial_sequence(n, arity, dim);
    }

    VectorSequence polynomial_sequence(const YAML::Node& n, std::size_t arity, std::size_t dim) const {
        auto comps = polynomial_components(n, dim, arity);
        return VectorSequence::rule(arity, dim, [comps](const MultiIndex& t) { return evaluate(comps, t.components()); });
    }

    MatrixSequence matrix_sequence(const YAML::Node& n, std::size_t arity, std::size_t dim) const {
        const auto d = static_cast<Eigen::Index>(dim);
        if (n.IsMap()) {
            if (n["constant"]) return MatrixSequence::constant(arity, literal_matrix(n["constant"], dim, "constant"));
            if (n["rule"]) {
                try {
                    return named_coefficient_rule(scalar<std::string>(n["rule"], "rule"), arity, dim);
                } catch (const InputError& e) {
                    fail(n["rule"], e.what());
                }
            }
            if (n["polynomial"]) return polynomial_matrix(n["polynomial"], arity, dim);
            if (n["table"]) {
                // Row-major entries a11, a12, ..., ann per lattice point.
                VectorSequence flat = table_vector(n["table"], arity, dim * dim);
                return MatrixSequence::rule(arity, dim, [flat, d](const MultiIndex& t) {
                    const Vector v = flat(t);
                    return Matrix(Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                        v.data(), d, d));
                });
            }
            fail(n, "matrix spec must be a nested list, or a map with constant, rule, polynomial or table");
        }
        if (all_numeric(n)) return MatrixSequence::constant(arity, literal_matrix(n, dim, "matrix"));
        return polynomial_matrix(n, arity, dim);
    }

    MatrixSequence polynomial_matrix(const YAML::Node& n, std::size_t arity, std::size_t dim) const {
        if (!n.IsSequence() || n.size() != dim) fail(n, "matrix must have " + std::to_string(dim) + " rows");
        std::vector<std::vector<Polynomial>> rows;
        for (const auto& row : n) rows.push_back(polynomial_components(row, dim, arity));
        return MatrixSequence::rule(arity, dim, [rows, dim](const MultiIndex& t) {
            const auto d = static_cast<Eigen::Index>(dim);
            Matrix a(d, d);
            for (std::size_t i = 0; i < dim; ++i) a.row(static_cast<Eigen::Index>(i)) = evaluate(rows[i], t.components());
            return a;
        });
    }

    // One family on t^beta = layer. Polynomials are written in the full
    // variables t1..tm; t_{beta+1} takes the layer value.
    VectorSequence family(const YAML::Node& n, std::size_t arity, std::size_t dim, std::size_t beta,
                          std::size_t layer) const {
        if (n.IsMap() && n["table"]) return table_vector(n["table"], arity - 1, dim);
        const YAML::Node body = n.IsMap() && n["polynomial"] ? n["polynomial"] : n;
        if (n.IsMap() && !n["polynomial"]) {
            if (n["constant"])
                return VectorSequence::constant(arity - 1, literal_vector(n["constant"], dim, "constant"));
            fail(n, "boundary family must be a list, or a map with constant, polynomial or table");
        }
        auto comps = polynomial_components(body, dim, arity);
        const auto fixed = static_cast<Coord>(layer);
        return VectorSequence::rule(arity - 1, dim, [comps, beta, fixed](const MultiIndex& s) {
            const MultiIndex t = s.with_inserted(beta, fixed);
            return evaluate(comps, t.components());
        });
    }

    std::vector<VectorSequence> layer(const YAML::Node& n, std::size_t arity, std::size_t dim, std::size_t j) const {
        if (!n.IsSequence() || n.size() != arity)
            fail(n, "boundary layer needs one family per axis (" + std::to_string(arity) + ")");
        std::vector<VectorSequence> out;
        for (std::size_t beta = 0; beta < arity; ++beta) out.push_back(family(n[beta], arity, dim, beta, j));
        return out;
    }

    BoundaryData boundary(const YAML::Node& n, std::size_t arity, std::size_t dim, std::size_t layers) const {
        if (!n.IsMap()) fail(n, "boundary must be a map with f, g, layers or from");
        try {
            if (n["from"]) return BoundaryData::restricted_from(vector_sequence(n["from"], arity, dim), layers);
            std::vector<std::vector<VectorSequence>> out;
            if (n["layers"]) {
                const YAML::Node ls = n["layers"];
                if (!ls.IsSequence()) fail(ls, "layers must be a list");
                for (std::size_t j = 0; j < ls.size(); ++j) out.push_back(layer(ls[j], arity, dim, j));
            } else {
                out.push_back(layer(require(n, "f"), arity, dim, 0));
                if (n["g"]) out.push_back(layer(n["g"], arity, dim, 1));
            }
            if (out.size() < layers)
                fail(n, "boundary has " + std::to_string(out.size()) + " layer(s), the recurrence needs " +
                            std::to_string(layers));
            if (out.size() > layers)
                fail(n, "boundary has " + std::to_string(out.size()) + " layers, the recurrence takes only " +
                            std::to_string(layers));
            return BoundaryData(arity, dim, std::move(out));
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            fail(n, e.what());
        }
    }

    void check_keys(const YAML::Node& map, const std::set<std::string>& allowed) const {
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.count(key)) fail(kv.first, "unknown field '" + key + "'");
        }
    }

private:
    std::string source_;
    std::filesystem::path base_;
    YAML::Node root_;
};

ProblemKind parse_kind(const Reader& r, const YAML::Node& n) {
    const auto s = r.scalar<std::string>(n, "kind");
    if (s == "first_order") return ProblemKind::FirstOrder;
    if (s == "second_order") return ProblemKind::SecondOrder;
    if (s == "order_k") return ProblemKind::OrderK;
    if (s == "special") return ProblemKind::Special;
    if (s == "surface") return ProblemKind::Surface;
    r.fail(n, "unknown kind '" + s + "' (expected first_order, second_order, order_k, special or surface)");
}

SpecialConstruction parse_construction(const Reader& r, const YAML::Node& n) {
    const auto s = r.scalar<std::string>(n, "construction");
    if (s == "sum_power") return SpecialConstruction::SumPower;
    if (s == "root") return SpecialConstruction::Root;
    if (s == "eigen_modes") return SpecialConstruction::EigenModes;
    if (s == "epsilon_power") return SpecialConstruction::EpsilonPower;
    r.fail(n, "unknown construction '" + s + "' (expected sum_power, root, eigen_modes or epsilon_power)");
}

Problem build(const Reader& r) {
    const YAML::Node& doc = r.root();
    if (!doc.IsMap()) r.fail(doc, "problem file must be a map");
    Problem p;
    p.kind = parse_kind(r, r.require(doc, "kind"));
    if (doc["tolerance"]) {
        p.tolerance = r.number(doc["tolerance"], "tolerance");
        if (p.tolerance < 0) r.fail(doc["tolerance"], "tolerance must be non-negative");
    }

    if (p.kind == ProblemKind::Surface) {
        r.check_keys(doc, {"kind", "mesh", "metric", "tol", "max_iter", "damping", "tolerance"});
        SurfaceSpec s;
        s.mesh = r.path(r.require(doc, "mesh"));
        if (doc["metric"]) s.metric = r.scalar<std::string>(doc["metric"], "metric");
        if (s.metric != "euclidean" && s.metric != "demo-curved")
            r.fail(doc["metric"], "unknown metric '" + s.metric + "' (expected euclidean or demo-curved)");
        if (doc["tol"]) s.newton.tol = r.number(doc["tol"], "tol");
        if (doc["max_iter"]) s.newton.max_iter = static_cast<int>(r.count(doc["max_iter"], "max_iter", 0));
        if (doc["damping"]) s.newton.damping = r.number(doc["damping"], "damping");
        p.surface = std::move(s);
        return p;
    }

    p.arity = r.count(r.require(doc, "arity"), "arity", p.kind == ProblemKind::Special ? 1 : 2);
    p.dimension = doc["dimension"] ? r.count(doc["dimension"], "dimension", 1) : 1;
    if (doc["window"]) p.window = r.window(doc["window"], p.arity);
    const std::size_t m = p.arity, n = p.dimension;

    auto forcing = [&]() {
        return doc["forcing"] ? r.vector_sequence(doc["forcing"], m, n) : VectorSequence::constant(m, Vector::Zero(static_cast<Eigen::Index>(n)));
    };

    try {
        switch (p.kind) {
            case ProblemKind::FirstOrder: {
                r.check_keys(doc, {"kind", "arity", "dimension", "window", "tolerance", "coefficient", "forcing", "boundary"});
                p.first_order.emplace(r.matrix_sequence(r.require(doc, "coefficient"), m, n), forcing(),
                                      r.boundary(r.require(doc, "boundary"), m, n, 1));
                break;
            }
            case ProblemKind::SecondOrder: {
                r.check_keys(doc, {"kind", "arity", "dimension", "window", "tolerance", "a", "b", "boundary"});
                if (n != 1) r.fail(doc["dimension"], "second_order problems are scalar (dimension 1)");
                p.second_order.emplace(r.number(r.require(doc, "a"), "a"), r.number(r.require(doc, "b"), "b"),
                                       r.boundary(r.require(doc, "boundary"), m, n, 2));
                break;
            }
            case ProblemKind::OrderK: {
                r.check_keys(doc, {"kind", "arity", "dimension", "window", "tolerance", "order", "coefficients", "forcing", "boundary"});
                const YAML::Node cs = r.require(doc, "coefficients");
                if (!cs.IsSequence()) r.fail(cs, "coefficients must be a list B_0 .. B_{k-1}");
                const std::size_t k = doc["order"] ? r.count(doc["order"], "order", 2) : cs.size();
                if (cs.size() != k)
                    r.fail(cs, "order " + std::to_string(k) + " needs " + std::to_string(k) + " coefficient blocks, got " +
                                   std::to_string(cs.size()));
                if (k < 2) r.fail(cs, "order_k problems need order >= 2");
                std::vector<MatrixSequence> blocks;
                for (const auto& c : cs) blocks.push_back(r.matrix_sequence(c, m, n));
                p.order_k.emplace(std::move(blocks), forcing(), r.boundary(r.require(doc, "boundary"), m, n, k));
                break;
            }
            case ProblemKind::Special: {
                r.check_keys(doc, {"kind", "arity", "dimension", "window", "tolerance", "construction", "matrix", "x0", "epsilon", "axis"});
                SpecialSpec s;
                s.construction = parse_construction(r, r.require(doc, "construction"));
                s.matrix = r.literal_matrix(r.require(doc, "matrix"), n, "matrix");
                s.x0 = r.literal_vector(r.require(doc, "x0"), n, "x0");
                if (s.construction == SpecialConstruction::EpsilonPower) {
                    const YAML::Node e = r.require(doc, "epsilon");
                    if (!e.IsSequence() || e.size() != m) r.fail(e, "epsilon must list one integer weight per axis");
                    for (const auto& w : e) s.epsilon.push_back(r.scalar<long long>(w, "epsilon weight"));
                }
                if (s.construction == SpecialConstruction::EigenModes) {
                    const std::size_t axis = doc["axis"] ? r.count(doc["axis"], "axis", 1) : 1;
                    if (axis > m) r.fail(doc["axis"], "axis must be between 1 and " + std::to_string(m));
                    s.axis = axis - 1;
                }
                p.special = std::move(s);
                break;
            }
            case ProblemKind::Surface: break;
        }
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        r.fail(doc, e.what());
    }
    return p;
}

}  // namespace

Problem parse_problem(const std::string& text, const std::string& source, const std::filesystem::path& base_dir) {
    Reader r(source, base_dir);
    try {
        r.set_root(YAML::Load(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                         ": " + e.msg);
    }
    try {
        Problem p = build(r);
        p.source = source;
        return p;
    } catch (const YAML::Exception& e) {
        throw ParseError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                         ": " + e.msg);
    }
}

Problem load_problem(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ParseError(path.string() + ": cannot open problem file");
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_problem(buf.str(), path.string(), path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace multitime::io
