// freelin: exact symbolic pipelines for torus actions on free algebras.
//
// Every subcommand reads a JSON specification, runs one pipeline, and writes
// a deterministic RunReport to stdout. Exit codes: 0 verified/true, 1 definite
// negative, 2 inconclusive (bounded procedure gave up), 3 input error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "freelin/genmat.hpp"
#include "freelin/json_io.hpp"
#include "freelin/lift2.hpp"
#include "freelin/parse.hpp"
#include "freelin/rees.hpp"
#include "freelin/tensor.hpp"
#include "freelin/torus.hpp"

using freelin::io::json;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw freelin::InvalidInput("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

freelin::QRing parse_field(const std::string& s) {
    if (s == "Q") return freelin::QRing{0};
    if (s.rfind("Fp:", 0) == 0) {
        std::int64_t p = std::stoll(s.substr(3));
        if (p < 2) throw freelin::InvalidInput("--field Fp:p needs p >= 2");
        return freelin::QRing{p};
    }
    throw freelin::InvalidInput("--field expects Q or Fp:p");
}

struct Run {
    std::string command;
    std::string digest;
    std::string status;
    std::vector<std::string> trace;
    json report = json(nullptr);
    int exit_code = kExitTrue;
    std::optional<double> elapsed_ms;
};

int emit(const Run& run, const std::string& output_path) {
    json out;
    out["command"] = run.command;
    out["input_digest"] = run.digest;
    out["status"] = run.status;
    out["trace"] = json(run.trace);
    out["report"] = run.report;
    if (run.elapsed_ms) out["elapsed_ms"] = *run.elapsed_ms;
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!output_path.empty()) {
        std::ofstream f(output_path, std::ios::binary);
        if (!f) throw freelin::InvalidInput("cannot open output file: " + output_path);
        f << text;
    }
    return run.exit_code;
}

json parse_json(const std::string& bytes) {
    try {
        return json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw freelin::io::SchemaError("", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic computation with torus actions on free algebras"};
    app.require_subcommand(1);

    std::string input_path, output_path, expr_text, field_spec = "Q";
    int max_degree = 0, big_n = 2, invert_cutoff = 0;
    std::uint64_t seed = 0;
    bool timing = false;

    app.add_option("--output", output_path, "also write the report to this path");
    app.add_option("--seed", seed, "seed for randomized subroutines");
    app.add_flag("--timing", timing, "include elapsed time in the report (non-deterministic)");

    auto* validate = app.add_subcommand("validate", "check the torus action axioms");
    validate->add_option("input", input_path)->required();
    auto* linearize = app.add_subcommand("linearize", "zero-weight-averaging linearization");
    linearize->add_option("input", input_path)->required();
    linearize->add_option("--max-degree", max_degree, "reject inputs above this degree");
    auto* effective = app.add_subcommand("effective", "effectiveness of the torus action");
    effective->add_option("input", input_path)->required();
    auto* jacobian = app.add_subcommand("jacobian", "free Jacobian matrix, optional inversion");
    jacobian->add_option("input", input_path)->required();
    jacobian->add_option("--invert", invert_cutoff, "invert up to this tensor-degree cutoff");
    auto* jacobi_endo = app.add_subcommand("jacobi-endo", "Jacobi endomorphism on F_2n");
    jacobi_endo->add_option("input", input_path)->required();
    auto* reduce = app.add_subcommand("reduce", "coefficient map on N x N generic matrices");
    reduce->add_option("input", input_path)->required();
    reduce->add_option("--N", big_n, "matrix size")->required();
    auto* al_check = app.add_subcommand("al-check", "standard identity S_2N on generic matrices");
    al_check->add_option("--N", big_n, "matrix size")->required();
    al_check->add_option("--field", field_spec, "coefficient field (Q or Fp:p)");
    auto* posroot = app.add_subcommand("posroot-linearize", "positive-root linearization");
    posroot->add_option("input", input_path)->required();
    auto* jvdk = app.add_subcommand("jvdk", "tame decomposition of a plane automorphism");
    jvdk->add_option("input", input_path)->required();
    auto* lift2 = app.add_subcommand("lift2", "decompose a plane automorphism and lift to F_2");
    lift2->add_option("input", input_path)->required();
    auto* kstar2 = app.add_subcommand("kstar2", "linearize a K^x action on F_2 via lifting");
    kstar2->add_option("input", input_path)->required();
    auto* rees = app.add_subcommand("rees", "extended Rees algebra presentation + grading check");
    rees->add_option("input", input_path)->required();
    rees->add_option("--max-degree", max_degree, "grading check depth (default 6)");
    auto* rees_action = app.add_subcommand("rees-action", "graded torus action on a Rees extension");
    rees_action->add_option("input", input_path)->required();
    auto* cancel = app.add_subcommand("cancel-pair", "cancellation pair over K[t] with witness");
    cancel->add_option("input", input_path)->required();
    auto* parse_cmd = app.add_subcommand("parse", "parse surface syntax to canonical JSON");
    parse_cmd->add_option("expr", expr_text, "expression, e.g. \"t^2*z1*z2 - z2*z1\"")->required();
    parse_cmd->add_option("--field", field_spec, "coefficient field (Q or Fp:p)");

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    Run run;
    run.command = sub->get_name();
    auto t0 = std::chrono::steady_clock::now();
    try {
        json in;
        if (!input_path.empty()) {
            std::string bytes = read_file(input_path);
            run.digest = fnv1a_hex(bytes);
            in = parse_json(bytes);
        }

        if (sub == validate) {
            freelin::ActionSpec spec = freelin::io::parse_action(in);
            bool ok = freelin::validate_action(spec);
            run.status = ok ? "true" : "false";
            run.report = json{{"valid", ok}};
            run.exit_code = ok ? kExitTrue : kExitFalse;
        } else if (sub == linearize) {
            freelin::ActionSpec spec = freelin::io::parse_action(in);
            if (max_degree > 0) {
                for (const auto& g : spec.images)
                    if (g.degree_or(0) > max_degree)
                        throw freelin::io::SchemaError("/images",
                                                       "image degree exceeds --max-degree");
            }
            freelin::LinearizationReport rep = freelin::average_linearize(spec);
            run.status = rep.verified() ? "Verified" : "Failed";
            run.trace = rep.trace;
            run.report = freelin::io::to_json(rep);
            run.exit_code = rep.verified() ? kExitTrue : kExitFalse;
        } else if (sub == effective) {
            freelin::ActionSpec spec = freelin::io::parse_action(in);
            if (!freelin::validate_action(spec)) {
                run.status = "NotAnAction";
                run.exit_code = kExitFalse;
            } else {
                try {
                    auto [shifted, c] = freelin::translate_origin(spec);
                    freelin::WeightData w = freelin::extract_weights(shifted);
                    run.report = freelin::io::to_json(w);
                    if (!w.diagonal) {
                        run.status = "NotDiagonalizable";
                        run.exit_code = kExitInconclusive;
                    } else {
                        bool eff = freelin::is_effective(w);
                        run.status = eff ? "true" : "false";
                        run.exit_code = eff ? kExitTrue : kExitFalse;
                    }
                } catch (const freelin::NoFixedPointFound& e) {
                    run.status = "NoFixedPointFound";
                    run.report = json{{"error", e.what()}};
                    run.exit_code = kExitInconclusive;
                }
            }
        } else if (sub == jacobian) {
            freelin::Endo phi = freelin::io::parse_endo(in);
            freelin::JacobianMatrix jac = freelin::jacobian(phi);
            if (invert_cutoff > 0) {
                freelin::JacobianInversion inv =
                    freelin::jacobian_invert_bounded(jac, invert_cutoff);
                run.status = freelin::to_string(inv.status);
                run.report = freelin::io::to_json(inv);
                switch (inv.status) {
                    case freelin::JacobianStatus::Invertible: run.exit_code = kExitTrue; break;
                    case freelin::JacobianStatus::NotInvertibleAtCutoff:
                        run.exit_code = kExitFalse;
                        break;
                    default: run.exit_code = kExitInconclusive;
                }
            } else {
                run.status = "Computed";
                run.report = freelin::io::to_json(jac);
            }
        } else if (sub == jacobi_endo) {
            freelin::Endo phi = freelin::io::parse_endo(in);
            run.status = "Computed";
            run.report = freelin::io::to_json(freelin::jacobi_endomorphism(phi));
        } else if (sub == reduce) {
            freelin::Endo phi = freelin::io::parse_endo(in);
            run.status = "Computed";
            run.report = freelin::io::to_json(freelin::reduce_endo(phi, big_n));
        } else if (sub == al_check) {
            freelin::QRing ring = parse_field(field_spec);
            if (big_n < 1) throw freelin::InvalidInput("--N must be >= 1");
            int k = 2 * big_n;
            std::vector<freelin::CommMat> mats;
            for (int i = 1; i <= k; ++i)
                mats.push_back(freelin::generic_matrix(i, k, big_n, ring).entries);
            freelin::CommMat s = freelin::standard_identity(k, mats);
            bool zero = true;
            for (const auto& row : s)
                for (const auto& e : row) zero = zero && e.is_zero();
            run.status = zero ? "true" : "false";
            run.report = json{{"k", k}, {"N", big_n}, {"vanishes", zero}};
            run.exit_code = zero ? kExitTrue : kExitFalse;
        } else if (sub == posroot) {
            freelin::ActionSpec spec = freelin::io::parse_action(in);
            freelin::LinearizationReport rep = freelin::linearize_positive_root(spec);
            run.status = rep.verified() ? "Verified" : "Failed";
            run.trace = rep.trace;
            run.report = freelin::io::to_json(rep);
            run.exit_code = rep.verified() ? kExitTrue : kExitFalse;
        } else if (sub == jvdk || sub == lift2) {
            freelin::CommEndo phi = freelin::io::parse_comm_endo(in);
            try {
                freelin::TameFactorization fact = freelin::jvdk_decompose(phi);
                run.status = "Decomposed";
                if (sub == lift2) {
                    run.report = json{{"factorization", freelin::io::to_json(fact)},
                                      {"lift", freelin::io::to_json(freelin::lift(fact))}};
                } else {
                    run.report = freelin::io::to_json(fact);
                }
            } catch (const freelin::NotAnAutomorphism& e) {
                run.status = "NotAnAutomorphism";
                run.report = json{{"error", e.what()}};
                run.exit_code = kExitFalse;
            }
        } else if (sub == kstar2) {
            freelin::ActionSpec spec = freelin::io::parse_action(in);
            freelin::LinearizationReport rep = freelin::linearize_kstar_f2(spec);
            run.status = rep.verified() ? "Verified" : "Failed";
            run.trace = rep.trace;
            run.report = freelin::io::to_json(rep);
            run.exit_code = rep.verified() ? kExitTrue : kExitFalse;
        } else if (sub == rees) {
            freelin::IdealPresentation ideal = freelin::io::parse_ideal(in);
            freelin::GradedPresentation pres = freelin::rees_presentation(ideal);
            int depth = max_degree > 0 ? max_degree : 6;
            bool graded = freelin::check_grading(pres, depth);
            run.status = graded ? "true" : "false";
            run.report = json{{"presentation", freelin::io::to_json(pres)},
                              {"grading_checked_to", depth},
                              {"graded", graded}};
            run.exit_code = graded ? kExitTrue : kExitFalse;
        } else if (sub == rees_action) {
            freelin::IdealPresentation ideal =
                freelin::io::parse_ideal(in.contains("ideal") ? in["ideal"] : in, "/ideal");
            if (!in.is_object() || !in.contains("m") || !in.contains("t_degree") ||
                !in.contains("y_degrees"))
                throw freelin::io::SchemaError("", "expected ideal, m, t_degree, y_degrees");
            int m = in["m"].is_number_integer()
                        ? in["m"].get<int>()
                        : throw freelin::io::SchemaError("/m", "expected an integer");
            std::vector<std::int64_t> t_deg;
            for (const auto& v : in["t_degree"]) t_deg.push_back(v.get<std::int64_t>());
            std::vector<std::vector<std::int64_t>> y_degs;
            for (const auto& row : in["y_degrees"]) {
                std::vector<std::int64_t> d;
                for (const auto& v : row) d.push_back(v.get<std::int64_t>());
                y_degs.push_back(std::move(d));
            }
            std::optional<int> s;
            if (in.contains("s") && !in["s"].is_null()) s = in["s"].get<int>();
            try {
                freelin::GradedAction act =
                    freelin::build_rees_action(ideal, m, t_deg, y_degs, s);
                run.status = "Constructed";
                run.trace = act.trace;
                run.report = freelin::io::to_json(act);
            } catch (const freelin::SubgroupConditionViolated& e) {
                run.status = "SubgroupConditionViolated";
                run.report = json{{"error", e.what()}};
                run.exit_code = kExitFalse;
            }
        } else if (sub == cancel) {
            if (!in.is_object() || !in.contains("f") || !in.contains("g") || !in.contains("p"))
                throw freelin::io::SchemaError("", "expected f, g, p (univariate CommPoly)");
            freelin::CommPoly f = freelin::io::parse_comm_poly(in["f"], "/f");
            freelin::CommPoly g = freelin::io::parse_comm_poly(in["g"], "/g");
            freelin::CommPoly p = freelin::io::parse_comm_poly(in["p"], "/p");
            int bound = 4;
            if (in.contains("degree_bound")) bound = in["degree_bound"].get<int>();
            try {
                freelin::CancellationPair pair =
                    freelin::cancellation_pair("K[t]", "t", f, g, p, bound);
                run.status = "Verified";
                run.report = freelin::io::to_json(pair);
            } catch (const freelin::QuotientIsoInvalid& e) {
                run.status = "QuotientIsoInvalid";
                run.report = json{{"error", e.what()}};
                run.exit_code = kExitFalse;
            } catch (const freelin::WitnessVerificationFailed& e) {
                run.status = "WitnessVerificationFailed";
                run.report = json{{"error", e.what()}};
                run.exit_code = kExitInconclusive;
            }
        } else if (sub == parse_cmd) {
            freelin::QRing ring = parse_field(field_spec);
            freelin::ParsedPoly parsed = freelin::parse_surface(expr_text, ring);
            run.digest = fnv1a_hex(expr_text);
            run.status = "Parsed";
            run.report = parsed.uses_parameters ? freelin::io::to_json(parsed.poly)
                                                : freelin::io::to_json(parsed.as_free());
        }
    } catch (const freelin::io::SchemaError& e) {
        run.status = "InputError";
        run.report = json{{"error", e.what()}, {"path", e.path()}};
        run.exit_code = kExitInputError;
    } catch (const std::exception& e) {
        run.status = "InputError";
        run.report = json{{"error", e.what()}};
        run.exit_code = kExitInputError;
    }

    if (timing) {
        auto t1 = std::chrono::steady_clock::now();
        run.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    return emit(run, output_path);
}
