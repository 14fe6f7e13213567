#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "totpos/cli.hpp"
#include "totpos/expression.hpp"
#include "totpos/matrix_io.hpp"
#include "totpos/witnesses.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace totpos;
using nlohmann::json;

static Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }

TEST_CASE("expression examples") {
    CHECK(evaluate(*parse_expression("2*x^3"), q(2), 128) == q(16));
    CHECK(evaluate(*parse_expression("exp(x)-1"), q(1), 128).to_double() == doctest::Approx(1.718281828459045));
    CHECK(evaluate(*parse_expression("x^-1"), q(4), 128) == q(1, 4));
    CHECK(evaluate(*parse_expression("x^0"), q(0), 128) == q(0));
    CHECK(evaluate(*parse_expression("x^0.5"), q(4), 128).to_double() == doctest::Approx(2));
    CHECK(is_rational_closed(*parse_expression("(x+1)/(x^2+3)")));
    CHECK_FALSE(is_rational_closed(*parse_expression("x^0.5")));
    CHECK_FALSE(is_rational_closed(*parse_expression("sqrt(x)")));
    try {
        parse_expression("x^^2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
    CHECK_THROWS_AS(parse_expression("x+"), ParseError);
    CHECK_THROWS_AS(parse_expression("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_expression("(x"), ParseError);
    CHECK_THROWS_AS(parse_expression("x y"), ParseError);
    CHECK_THROWS_AS(evaluate(*parse_expression("log(x)"), q(0), 128), DomainError);
    CHECK_THROWS_AS(evaluate(*parse_expression("sqrt(x-2)"), q(1), 128), DomainError);
    CHECK_THROWS_AS(evaluate(*parse_expression("x^-1"), q(0), 128), DomainError);
}

// Random expression text paired with its value at x, computed in double.
struct Sample {
    std::string text;
    double value;
};

static Sample random_expr(oracle::Gen& g, double x, int depth) {
    const int pick = depth <= 0 ? static_cast<int>(g.integer(0, 1)) : static_cast<int>(g.integer(0, 9));
    auto sub = [&] { return random_expr(g, x, depth - 1); };
    switch (pick) {
    case 0: return {"x", x};
    case 1: {
        const long n = g.integer(1, 9);
        return {std::to_string(n), static_cast<double>(n)};
    }
    case 2: {
        Sample a = sub(), b = sub();
        return {"(" + a.text + ")+(" + b.text + ")", a.value + b.value};
    }
    case 3: {
        Sample a = sub(), b = sub();
        return {"(" + a.text + ")-(" + b.text + ")", a.value - b.value};
    }
    case 4: {
        Sample a = sub(), b = sub();
        return {"(" + a.text + ")*(" + b.text + ")", a.value * b.value};
    }
    case 5: {
        // denominator bounded below by 1
        Sample a = sub(), b = sub();
        return {"(" + a.text + ")/((" + b.text + ")^2+1)", a.value / (b.value * b.value + 1)};
    }
    case 6: {
        Sample a = sub();
        const long k = g.integer(-2, 3);
        return {"(((" + a.text + ")^2+1)^0.5)^(" + std::to_string(k) + ")",
                std::pow(std::sqrt(a.value * a.value + 1), static_cast<double>(k))};
    }
    case 7: {
        Sample a = sub();
        return {"exp((" + a.text + ")/((" + a.text + ")^2+1))", std::exp(a.value / (a.value * a.value + 1))};
    }
    case 8: {
        Sample a = sub();
        return {"log((" + a.text + ")^2+1)", std::log(a.value * a.value + 1)};
    }
    default: {
        Sample a = sub();
        return {"sqrt((" + a.text + ")^2)", std::abs(a.value)};
    }
    }
}

TEST_CASE("property: evaluation agrees with a reference evaluator") {
    oracle::Gen g(61);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        const double x = g.real(0.25, 2);
        Sample s = random_expr(g, x, 3);
        const ExprPtr e = parse_expression(s.text);
        const double got = evaluate(*e, Scalar(make_float(x, 128)), 128).to_double();
        const double tol = 1e-9 * std::max(1.0, std::abs(s.value));
        CHECK_MESSAGE(std::abs(got - s.value) <= tol, s.text, " at x=", x);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("property: print and parse reach a fixed point") {
    oracle::Gen g(62);
    for (int t = 0; t < 300; ++t) {
        Sample s = random_expr(g, 1.0, 3);
        const std::string once = print_expression(*parse_expression(s.text));
        const std::string twice = print_expression(*parse_expression(once));
        CHECK(once == twice);
        const Scalar x = Scalar::parse_float("0.75", 128);
        CHECK(evaluate(*parse_expression(once), x, 128).to_double() ==
              doctest::Approx(evaluate(*parse_expression(s.text), x, 128).to_double()).epsilon(1e-12));
    }
    for (const char* s : {"2*x^3", "exp(x)-1", "x^-1", "-2*x", "x-(1-x)", "x/(x/2)", "(x^2)^3", "x^2^3", "-1.5e-3*x"}) {
        const std::string p = print_expression(*parse_expression(s));
        CHECK(print_expression(*parse_expression(p)) == p);
        const Scalar x = q(3, 2);
        CHECK(evaluate(*parse_expression(p), x, 128).to_double() ==
              doctest::Approx(evaluate(*parse_expression(s), x, 128).to_double()));
    }
}

TEST_CASE("matrix JSON and CSV round trips") {
    oracle::Gen g(63);
    for (int t = 0; t < 50; ++t) {
        Matrix m = g.rational_matrix(1 + t % 4, 1 + t % 3, -5, 5, 7);
        CHECK(matrix_from_json(matrix_to_json(m)) == m);
        Matrix f = m.to_float(t % 2 ? 64 : 200);
        CHECK(matrix_from_json(matrix_to_json(f)) == f);
        CHECK(matrix_from_csv(matrix_to_csv(f), f.precision()) == f);
        const Matrix d = m.to_float(default_precision());
        std::istringstream js(matrix_to_json(m).dump()), cs(matrix_to_csv(d));
        CHECK(read_matrix(js) == m);
        CHECK(read_matrix(cs) == d);
    }
    Matrix c = matrix_C(128);
    CHECK(matrix_from_json(matrix_to_json(c)) == c);

    json numbers = json::parse(R"({"rows": 2, "cols": 2, "data": [1, 2, 0.5, "3/4"]})");
    CHECK(matrix_from_json(numbers) == Matrix::from_rows({{1, 2}, {q(1, 2), q(3, 4)}}));
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})")), FormatError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 1, "cols": 1, "data": ["x"]})")), FormatError);
    CHECK_THROWS_AS(matrix_from_csv("1,2\n3\n", 128), FormatError);
}

namespace {

struct Tmp {
    std::filesystem::path dir;
    Tmp() {
        dir = std::filesystem::temp_directory_path() / ("totpos-cli-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~Tmp() { std::filesystem::remove_all(dir); }
    std::string write(const std::string& name, const std::string& body) const {
        const auto p = dir / name;
        std::ofstream(p) << body;
        return p.string();
    }
};

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("cli: check") {
    Tmp tmp;
    const std::string c = tmp.write("C.json", matrix_to_json(matrix_C(128)).dump());
    Run r = run({"check", "--property", "tn", "--file", c});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["verdict"] == "holds");
    CHECK(r.report()["scalar"] == "float");

    r = run({"check", "--property", "tn", "--strict", c});
    CHECK(r.code == cli::inconclusive);
    CHECK(r.report()["verdict"] == "inconclusive");

    const std::string bad = tmp.write("bad.csv", "1,2,1\n3,1,2\n1,1,1\n");
    r = run({"check", "--property", "tn", "--exact", bad});
    CHECK(r.code == cli::fails);
    CHECK(r.report()["witness"]["rows"] == json::array({0, 1}));
    CHECK(r.report()["scalar"] == "rational");

    r = run({"check", "--property", "tp_r", "--order", "1", bad});
    CHECK(r.code == cli::ok);
    r = run({"check", "--property", "tp_r", bad});
    CHECK(r.code == cli::usage);
    r = run({"check", "--property", "pd", tmp.write("pd.json", R"({"rows":2,"cols":2,"data":["2","1","1","2"]})")});
    CHECK(r.code == cli::ok);
    r = run({"check", "--property", "tn", tmp.write("big.csv", matrix_to_csv(Matrix::identity(11)))});
    CHECK(r.code == cli::usage);
    CHECK(r.err.find("refused") != std::string::npos);
    r = run({"check", "--property", "tn", "--size-guard", "11", tmp.dir.string() + "/big.csv"});
    CHECK(r.code == cli::ok);
}

TEST_CASE("cli: falsify, classify and is-preserver") {
    Run r = run({"falsify", "--fn", "exp(x)-1", "--mode", "tn", "--delta", "2"});
    CHECK(r.code == cli::fails);
    CHECK(r.report()["counterexample"]["family"].get<std::string>().rfind("A(", 0) == 0);
    CHECK(r.report()["counterexample"]["violation"]["verdict"] == "fails");

    r = run({"falsify", "--power", "2,1", "--mode", "tp", "--delta", "3"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["counterexample"].is_null());

    r = run({"classify", "--mode", "tn", "--delta", "4"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["class"] == "constants c >= 0 or F(x) = cx, c > 0");

    CHECK(run({"is-preserver", "--mode", "tn_sym", "--delta", "4", "--power", "1,2.5"}).code == cli::ok);
    CHECK(run({"is-preserver", "--mode", "tn_sym", "--delta", "4", "--power", "1,1.5"}).code == cli::fails);
}

TEST_CASE("cli: constructions") {
    Run r = run({"witness", "--family", "A", "--x", "2", "--y", "3"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["det"] == "0");
    r = run({"witness", "--family", "N", "--params", "eps=1/2,x=1"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["verdict"] == "holds");

    r = run({"embed", "--entries", "4,2,3,5", "--m", "3", "--n", "3"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["case"] == "generic");
    r = run({"embed-at", "--entries", "4,2,3,5", "--m", "4", "--n", "4", "--p", "1", "--p2", "2", "--q", "0", "--q2", "2"});
    CHECK(r.code == cli::ok);

    r = run({"complete-hankel", "--a", "1", "--b", "1/2", "--c", "1/2", "--delta", "3"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["verdict"] == "holds");
    r = run({"embed-hankel", "--a", "1", "--b", "1/2", "--c", "1/2", "--n", "2", "--k", "2", "--N", "4"});
    CHECK(r.code == cli::ok);
    r = run({"extend-backwards", "--moments", "4,10,30,100,354,1300,4890"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["verdict"] == "holds");
    r = run({"extend-backwards", "--moments", "1,1,1"});
    CHECK(r.code == cli::usage);

    Tmp tmp;
    r = run({"densify", tmp.write("d.csv", "1,0\n0,2\n"), "--tol", "0.001"});
    CHECK(r.code == cli::ok);
    CHECK(r.report()["distance"].get<double>() <= 1e-3);
}

TEST_CASE("cli: usage errors") {
    CHECK(run({}).code == cli::usage);
    CHECK(run({"frobnicate"}).code == cli::usage);
    CHECK(run({"classify"}).code == cli::usage);
    CHECK(run({"classify", "--mode", "psd", "--delta", "2"}).code == cli::usage);
    CHECK(run({"falsify", "--fn", "x^^2", "--mode", "tn"}).code == cli::usage);
    CHECK(run({"check", "--property", "tn", "/nonexistent/file.json"}).code == cli::usage);
    Run h = run({"--help"});
    CHECK(h.code == cli::ok);
    CHECK(h.out.find("falsify") != std::string::npos);
}
