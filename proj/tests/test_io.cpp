#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "multitime/io.hpp"
#include "support/oracles.hpp"

using namespace multitime;
namespace mt = multitime::testing;

namespace {

const std::filesystem::path kDemos = std::filesystem::path(MULTITIME_SOURCE_DIR) / "demos";

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Polynomial, ParsesAndEvaluates) {
    const auto p = io::Polynomial::parse("2*t1^2 - t1*t2 + 3", 2);
    const Coord t[] = {3, 4};
    EXPECT_EQ(p.evaluate(t), 2 * 9 - 12 + 3);
    const auto q = io::Polynomial::parse("-(t1 + 1)*(t2 - 2)", 2);
    EXPECT_EQ(q.evaluate(t), -(4 * 2));
    EXPECT_EQ(io::Polynomial::parse("t2 - t2", 2).terms().size(), 0u);
    EXPECT_EQ(io::Polynomial::parse(io::Polynomial::parse("3*t1*t2^2 - 7", 3).to_string(), 3).to_string(),
              io::Polynomial::parse("3*t1*t2^2 - 7", 3).to_string());
}

TEST(Polynomial, ErrorsCarryColumn) {
    try {
        io::Polynomial::parse("t1 + t3", 2);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("column 6"), std::string::npos) << e.what();
    }
    EXPECT_THROW(io::Polynomial::parse("t1 +", 2), ParseError);
    EXPECT_THROW(io::Polynomial::parse("2.5*t1", 2), ParseError);
}

TEST(Csv, RoundTripIsBitwiseStable) {
    mt::Rng rng(80);
    const LatticeWindow w{3, 4};
    std::vector<Vector> vals;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Vector v = mt::random_vector(rng, 2, -1e6, 1e6);
        v[0] = std::ldexp(v[0], mt::uniform_int(rng, -300, 300));
        vals.push_back(v);
    }
    vals[0] << 0.1, -0.0;
    const SolutionGrid grid(w, vals);
    std::stringstream first;
    io::write_grid_csv(first, grid);
    const auto back = io::read_grid_csv(first);
    ASSERT_EQ(back.window(), w);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (int c = 0; c < 2; ++c) EXPECT_TRUE(bitwise_equal(back.at(i)[c], grid.at(i)[c]));
    std::stringstream second;
    io::write_grid_csv(second, back);
    EXPECT_EQ(first.str(), second.str());
}

TEST(Csv, RejectsIncompleteTables) {
    std::istringstream missing("t1,t2,x1\n0,0,1\n0,1,1\n1,1,1\n");
    EXPECT_THROW(io::read_grid_csv(missing), ParseError);
    std::istringstream shuffled("t1,t2,x1\n0,1,1\n0,0,1\n1,0,1\n1,1,1\n");
    EXPECT_THROW(io::read_grid_csv(shuffled), ParseError);
}

TEST(Mesh, RoundTripAndObj) {
    mt::Rng rng(81);
    const auto g = mt::random_surface(rng, 4, 3);
    std::stringstream text;
    io::write_mesh(text, g);
    const auto back = io::read_mesh(text);
    ASSERT_EQ(back.rows(), 4u);
    ASSERT_EQ(back.cols(), 3u);
    for (std::size_t i = 0; i < g.nodes().size(); ++i) EXPECT_EQ(back.nodes()[i], g.nodes()[i]);

    std::stringstream obj;
    io::write_obj(obj, g);
    int vertices = 0, faces = 0;
    std::string line;
    while (std::getline(obj, line)) {
        if (line.rfind("v ", 0) == 0) ++vertices;
        if (line.rfind("f ", 0) == 0) ++faces;
    }
    EXPECT_EQ(vertices, 5 * 4);
    EXPECT_EQ(faces, 2 * 4 * 3);
}

TEST(Mesh, MalformedHeader) {
    std::istringstream bad("3 3 1\n");
    EXPECT_THROW(io::read_mesh(bad), ParseError);
    std::istringstream short_body("1 1 1 1\n0 0 0\n1 0 0\n0 1 0\n");
    EXPECT_THROW(io::read_mesh(short_body), ParseError);
}

TEST(Literals, WindowAndMatrix) {
    EXPECT_EQ(io::parse_window("6x6"), (LatticeWindow{6, 6}));
    EXPECT_EQ(io::parse_window("2,3,4"), (LatticeWindow{2, 3, 4}));
    EXPECT_THROW(io::parse_window("6x"), ParseError);
    Matrix expect(2, 2);
    expect << 1, 2, 3, 4;
    EXPECT_EQ(io::parse_matrix("1,2;3,4"), expect);
    EXPECT_THROW(io::parse_matrix("1,2;3"), ParseError);
}

TEST(ProblemFile, LoadsEveryDemo) {
    for (const char* name : {"first_order.yaml", "rotation.yaml", "incompatible.yaml", "fibonacci.yaml",
                             "second_order_incompatible.yaml", "tribonacci.yaml", "special_eigen.yaml",
                             "special_root.yaml", "special_epsilon.yaml", "special_sum_power.yaml", "saddle.yaml"}) {
        EXPECT_NO_THROW(io::load_problem(kDemos / name)) << name;
    }
    const auto p = io::load_problem(kDemos / "first_order.yaml");
    EXPECT_EQ(p.kind, io::ProblemKind::FirstOrder);
    ASSERT_TRUE(p.first_order);
    EXPECT_EQ(p.first_order->boundary.f(0)(MultiIndex{4})[0], 4.0);
    EXPECT_EQ(p.first_order->boundary.f(1)(MultiIndex{4})[0], 8.0);
    EXPECT_EQ(*p.window, (LatticeWindow{6, 6}));
}

TEST(ProblemFile, BoundaryPolynomialsUseFullVariables) {
    const auto p = io::parse_problem(R"(kind: first_order
arity: 2
coefficient: [[1]]
boundary:
  f: [["t1 + 10*t2"], ["t1 + 10*t2"]]
)");
    EXPECT_EQ(p.first_order->boundary.value_at(0, 0, MultiIndex{0, 3})[0], 30.0);
    EXPECT_EQ(p.first_order->boundary.value_at(0, 1, MultiIndex{3, 0})[0], 3.0);
}

TEST(ProblemFile, ErrorsCarryLineAndColumn) {
    try {
        io::parse_problem("kind: first_order\narity: 2\ncoefficient: [[1]]\nboundary: {f: [[1], [1]]}\nbogus: 1\n",
                          "p.yaml");
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("p.yaml:5:", 0), 0u) << e.what();
    }
    EXPECT_THROW(io::parse_problem("kind: fourth_order\n"), InputError);
    EXPECT_THROW(io::parse_problem("kind: first_order\narity: 2\ncoefficient: [[1, 2]]\nboundary: {f: [[1], [1]]}\n"),
                 InputError);
    EXPECT_THROW(io::parse_problem("kind: [\n"), InputError);
}

TEST(ProblemFile, NamedRules) {
    for (const auto& name : io::coefficient_rule_names()) {
        const auto a = io::named_coefficient_rule(name, 2, 2);
        EXPECT_EQ(a(MultiIndex{1, 2}).rows(), 2);
    }
    EXPECT_THROW(io::named_coefficient_rule("nope", 2, 2), InputError);
}
