// deltagl: exact arithmetic on GL_n over truncated Witt vectors — lift
// evaluation, Legendre matrices, twisted-equation solving, obstruction
// witnesses, and deterministic verification suites.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "deltagl/verify.hpp"

namespace {

using deltagl::Context;
using deltagl::fail;
using deltagl::json;
using deltagl::Mat;
using deltagl::Scalar;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("DimensionMismatch", "cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const nlohmann::json::exception&) {
        fail("DimensionMismatch", "malformed input file: " + path);
    }
}

void emit(const json& j, const std::string& out_path, const std::string& format) {
    std::string text;
    if (format == "text") {
        std::ostringstream os;
        if (j.contains("checks")) {
            for (const auto& c : j["checks"])
                os << c["name"].get<std::string>() << ": "
                   << (c["skipped"].get<bool>() ? "skipped"
                                                : (c["pass"].get<bool>() ? "pass" : "FAIL"))
                   << "\n";
            os << "overall: " << (j["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
        } else {
            os << j.dump(2) << "\n";
        }
        text = os.str();
    } else {
        text = j.dump(2) + "\n";
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

// signed base-10 representative in (-p^k/2, p^k/2] for readable 1x1 outputs
std::string signed_repr(const Scalar& s) {
    if (s.ctx->f != 1) return std::to_string(s.c[0]);
    deltagl::u64 m = s.ctx->pk(s.prec);
    deltagl::u64 v = s.c[0];
    if (v > m / 2) return "-" + std::to_string(m - v);
    return std::to_string(v);
}

struct CommonOpts {
    deltagl::i64 p = 5;
    int f = 1;
    int N = 10;
    int n = 2;
    deltagl::u64 seed = 0;
    int samples = 100;
    std::string in_path, out_path;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "odd prime");
    cmd->add_option("--f", o.f, "residue degree");
    cmd->add_option("--N", o.N, "working precision (base-p digits)");
    cmd->add_option("--n", o.n, "matrix size");
    cmd->add_option("--seed", o.seed, "sampling seed");
    cmd->add_option("--samples", o.samples, "samples per check");
    cmd->add_option("--in", o.in_path, "input JSON file");
    cmd->add_option("--out", o.out_path, "output file (default stdout)");
    cmd->add_option("--format", o.format, "json | text");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Frobenius-lift calculus on GL_n over truncated Witt vectors"};
    app.require_subcommand(1);

    CommonOpts eval_o, verify_o, solve_o, witness_o, legendre_o;
    std::string suite = "all";
    bool corrupt_lambda = false;
    std::string witness_point = "1,1,1,2";
    std::string legendre_sign = "+";
    deltagl::i64 legendre_q_int = 0;
    bool legendre_q_int_set = false;

    CLI::App* c_eval = app.add_subcommand("eval", "evaluate a lift at a point");
    add_common(c_eval, eval_o);

    CLI::App* c_verify = app.add_subcommand("verify", "run verification suites");
    add_common(c_verify, verify_o);
    c_verify->add_option("--suite", suite, "padic|jet|bracket|outer|inner|solver|all");
    c_verify->add_flag("--corrupt-lambda", corrupt_lambda)->group(""); // hidden test hook

    CLI::App* c_solve = app.add_subcommand("solve", "solve the twisted Frobenius equation");
    add_common(c_solve, solve_o);

    CLI::App* c_witness = app.add_subcommand("witness", "obstruction-identity defect valuation");
    add_common(c_witness, witness_o);
    c_witness->add_option("--point", witness_point, "a,b,c,d (integers)");

    CLI::App* c_legendre = app.add_subcommand("legendre", "value of the Chern lift at 1");
    add_common(c_legendre, legendre_o);
    c_legendre->add_option("--sign", legendre_sign, "+ | -");
    c_legendre->add_option("--q", legendre_q_int, "1x1 Gram entry (integer shorthand)")
        ->each([&](const std::string&) { legendre_q_int_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_eval->parsed()) {
            Context cx(eval_o.p, eval_o.f, eval_o.N);
            if (eval_o.in_path.empty()) fail("DimensionMismatch", "eval needs --in");
            json in = load_json(eval_o.in_path);
            deltagl::FrobeniusLift L = deltagl::json_to_lift(cx, in.at("lift"));
            Mat a = deltagl::json_to_mat(cx, in.at("point"));
            json out;
            out["context"] = deltagl::context_to_json(cx);
            out["Phi"] = deltagl::mat_to_json(deltagl::evaluate(L, a));
            out["Delta"] = deltagl::mat_to_json(deltagl::christoffel(L, a));
            out["ldelta"] = deltagl::mat_to_json(deltagl::log_derivative(L, a).m);
            emit(out, eval_o.out_path, eval_o.format);
            return 0;
        }
        if (c_verify->parsed()) {
            deltagl::VerifyConfig cfg;
            cfg.p = verify_o.p;
            cfg.f = verify_o.f;
            cfg.N = verify_o.N;
            cfg.n = verify_o.n;
            cfg.seed = verify_o.seed;
            cfg.samples = verify_o.samples;
            cfg.corrupt_lambda = corrupt_lambda;
            cfg.threads = deltagl::env_threads();
            json report = deltagl::run_suites(cfg, suite);
            emit(report, verify_o.out_path, verify_o.format);
            return report["pass"].get<bool>() ? 0 : 1;
        }
        if (c_solve->parsed()) {
            Context cx(solve_o.p, solve_o.f, solve_o.N);
            if (solve_o.in_path.empty()) fail("DimensionMismatch", "solve needs --in");
            json in = load_json(solve_o.in_path);
            deltagl::DeltaLinearProblem prob{deltagl::json_to_lift(cx, in.at("lift")),
                                             deltagl::json_to_mat(cx, in.at("alpha"))};
            Mat seed = deltagl::json_to_mat(cx, in.at("seed")).reduced(1);
            Mat u = deltagl::solve(prob, seed);
            json out;
            out["context"] = deltagl::context_to_json(cx);
            out["u"] = deltagl::mat_to_json(u);
            emit(out, solve_o.out_path, solve_o.format);
            return 0;
        }
        if (c_witness->parsed()) {
            Context cx(witness_o.p, witness_o.f, witness_o.N);
            deltagl::i64 vals[4];
            std::stringstream ss(witness_point);
            std::string tok;
            for (int i = 0; i < 4; ++i) {
                if (!std::getline(ss, tok, ',')) fail("DimensionMismatch", "--point needs a,b,c,d");
                vals[i] = std::stoll(tok);
            }
            deltagl::WitnessReport w =
                deltagl::inner_obstruction_witness(cx, vals[0], vals[1], vals[2], vals[3]);
            json out;
            out["context"] = deltagl::context_to_json(cx);
            out["finite"] = w.finite;
            out["valuation"] = w.valuation;
            emit(out, witness_o.out_path, witness_o.format);
            return 0;
        }
        if (c_legendre->parsed()) {
            Context cx(legendre_o.p, legendre_o.f, legendre_o.N);
            int sign = legendre_sign == "-" ? -1 : +1;
            Mat q;
            if (legendre_q_int_set) {
                q = Mat(cx, 1);
                q.at(0, 0) = Scalar::from_int(cx, legendre_q_int).reduced(cx.N);
            } else if (!legendre_o.in_path.empty()) {
                q = deltagl::json_to_mat(cx, load_json(legendre_o.in_path));
            } else {
                fail("DimensionMismatch", "legendre needs --q or --in");
            }
            Mat phi1 = deltagl::legendre_matrix(q, sign);
            json out;
            out["context"] = deltagl::context_to_json(cx);
            out["Phi1"] = deltagl::mat_to_json(phi1);
            if (phi1.n == 1) out["Phi1_signed"] = signed_repr(phi1.at(0, 0));
            emit(out, legendre_o.out_path, legendre_o.format);
            return 0;
        }
    } catch (const deltagl::Error& e) {
        json err;
        err["error"] = e.kind();
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "Internal";
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 2;
}
