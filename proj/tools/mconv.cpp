#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mconv/pipeline.hpp"

using namespace mconv;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void emit(const json& doc, const std::string& path) {
    if (path.empty())
        std::cout << doc.dump(2) << "\n";
    else
        io::write_json_file(path, doc);
}

template <ExactField F>
typename F::Element parse_scalar(const F& f, const std::string& text);

template <>
CyclotomicElement parse_scalar(const CyclotomicField& f, const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0 || v.get_den() == 0) throw Error(ErrorKind::ParseError, "bad scalar \"" + text + "\"");
    v.canonicalize();
    return f.from_rational(v);
}

template <>
FiniteField::Element parse_scalar(const FiniteField& f, const std::string& text) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return f.from_int(v);
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "bad scalar \"" + text + "\"");
    }
}

template <ExactField F>
std::vector<unsigned> default_orders(const F& f);

template <>
std::vector<unsigned> default_orders(const CyclotomicField& f) {
    return {f.order() % 2 ? 2 * f.order() : f.order()};
}

template <>
std::vector<unsigned> default_orders(const FiniteField& f) {
    return {static_cast<unsigned>(f.order() - 1)};
}

template <ExactField F>
json analyze(const MonodromyTuple<F>& t, std::vector<unsigned> orders, std::size_t order_bound) {
    if (orders.empty()) orders = default_orders(t.field);
    const auto& f = t.field;
    json census = json::array();
    for (const auto& row : entry_census(t, order_bound)) {
        census.push_back({{"index", row.index},
                          {"determinant", io::element_to_json(f, row.determinant)},
                          {"order", row.order ? json(*row.order) : json("exceeds bound")},
                          {"rank_minus_one", row.rank_minus_one},
                          {"rank_plus_one", row.rank_plus_one},
                          {"is_reflection", row.is_reflection},
                          {"is_bireflection", row.is_bireflection},
                          {"is_negated_reflection", row.is_negated_reflection},
                          {"is_scalar", row.is_scalar}});
    }
    json jordan = json::array();
    for (const auto& m : t.entries) {
        try {
            jordan.push_back(jordan_to_json(f, jordan_data(m, orders)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::EigenvalueOutsideField) throw;
            jordan.push_back({{"error", e.what()}});
        }
    }
    return {{"n", t.n}, {"r", t.r}, {"eigenvalue_orders", orders}, {"census", census}, {"jordan", jordan}};
}

// A rank-one tuple over Q can twist a tuple over any cyclotomic field.
MonodromyTuple<CyclotomicField> twist(const MonodromyTuple<CyclotomicField>& t, RankOneTuple<CyclotomicField> c) {
    if (c.field.degree() == 1 && !(c.field == t.field)) {
        for (auto& s : c.scalars) s = t.field.from_rational(c.field.coeffs(s).front());
        c.field = t.field;
    }
    return tensor_rank_one(t, c);
}

MonodromyTuple<FiniteField> twist(const MonodromyTuple<FiniteField>& t, const RankOneTuple<FiniteField>& c) {
    return tensor_rank_one(t, c);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact middle convolution of monodromy tuples"};
    app.require_subcommand(1);

    std::string out_path;
    unsigned m = 0;
    std::size_t r = 0;

    auto* construct = app.add_subcommand("construct", "Build the rank-2 tuple T_{m,r}");
    construct->add_option("--m", m)->required();
    construct->add_option("--r", r)->required();
    construct->add_option("-o,--output", out_path);

    std::string pattern;
    unsigned field_order = 1;
    auto* rank_one = app.add_subcommand("rank-one", "Build a rank-one sign pattern");
    rank_one->add_option("--pattern", pattern)->required()->check(CLI::IsMember({"N1", "N2", "N3", "N4", "N5", "L5"}));
    rank_one->add_option("--r", r)->required();
    rank_one->add_option("--field-order", field_order, "N for Q(zeta_N); 1 is Q");
    rank_one->add_option("-o,--output", out_path);

    std::string in_a, in_b;
    auto* tensor = app.add_subcommand("tensor", "Twist a tuple by a rank-one tuple");
    tensor->add_option("A", in_a)->required();
    tensor->add_option("B", in_b)->required();
    tensor->add_option("-o,--output", out_path);

    std::string lambda_text = "-1";
    auto* convolve = app.add_subcommand("convolve", "Apply MC_lambda");
    convolve->add_option("--lambda", lambda_text);
    convolve->add_option("IN", in_a)->required();
    convolve->add_option("-o,--output", out_path);

    std::vector<unsigned> orders;
    std::size_t order_bound = 10000;
    auto* analyze_cmd = app.add_subcommand("analyze", "Entry census and Jordan data");
    analyze_cmd->add_option("IN", in_a)->required();
    analyze_cmd->add_option("--orders", orders)->delimiter(',');
    analyze_cmd->add_option("--order-bound", order_bound);

    std::uint32_t ell = 0;
    unsigned k = 0;
    auto* reduce = app.add_subcommand("reduce", "Reduce a cyclotomic tuple modulo a prime above l");
    reduce->add_option("IN", in_a)->required();
    reduce->add_option("--ell", ell)->required();
    reduce->add_option("--k", k, "residue degree; 0 picks the minimal one");
    reduce->add_option("-o,--output", out_path);

    std::string mode_text;
    std::uint64_t q = 0;
    auto* certify = app.add_subcommand("certify", "Residual SL_n(F_q) certificate");
    certify->add_option("IN", in_a)->required();
    certify->add_option("--mode", mode_text)->required()->check(CLI::IsMember({"sl", "slpm"}));
    certify->add_option("--q", q, "defaults to the order of the tuple's field");
    certify->add_option("-o,--output", out_path);

    PipelineConfig config;
    std::uint64_t pipeline_q = 0;
    auto* pipeline = app.add_subcommand("pipeline", "Build, check and certify a family");
    pipeline->add_option("--family", config.family)->required();
    pipeline->add_option("--m", config.m)->required();
    pipeline->add_option("--r", config.r)->required();
    pipeline->add_option("--q", pipeline_q);
    pipeline->add_option("--report", out_path);
    pipeline->add_option("--orders", config.eigenvalue_orders)->delimiter(',');
    pipeline->add_option("--mode", mode_text)->check(CLI::IsMember({"sl", "slpm"}));
    pipeline->add_flag("--involution", config.involution_check, "also check MC(MC(T)) ~ T at each convolution");

    auto* selfcheck = app.add_subcommand("selfcheck", "Rank, product and involution checks of MC_lambda");
    selfcheck->add_option("IN", in_a)->required();
    selfcheck->add_option("--lambda", lambda_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*construct) {
            emit(io::tuple_to_json(construct_T(m, r)), out_path);
            return kOk;
        }
        if (*rank_one) {
            const CyclotomicField f = field_order == 1 ? CyclotomicField::rational() : CyclotomicField(field_order);
            emit(io::rank_one_to_json(construct_rank_one(*parse_pattern(pattern), r, f)), out_path);
            return kOk;
        }
        if (*tensor) {
            const auto a = io::tuple_from_json(io::read_json_file(in_a));
            const auto b = io::rank_one_from_json(io::read_json_file(in_b));
            const auto result = std::visit(
                [](const auto& t, const auto& c) -> json {
                    using TF = std::decay_t<decltype(t.field)>;
                    using CFld = std::decay_t<decltype(c.field)>;
                    if constexpr (std::is_same_v<TF, CFld>)
                        return io::tuple_to_json(twist(t, c));
                    else
                        throw Error(ErrorKind::FieldMismatch, "tuple and rank-one tuple use different kinds of field");
                },
                a, b);
            emit(result, out_path);
            return kOk;
        }
        if (*convolve) {
            const auto t = io::tuple_from_json(io::read_json_file(in_a));
            emit(std::visit([&](const auto& x) { return io::tuple_to_json(mc(x, parse_scalar(x.field, lambda_text))); }, t),
                 out_path);
            return kOk;
        }
        if (*analyze_cmd) {
            const auto t = io::tuple_from_json(io::read_json_file(in_a));
            emit(std::visit([&](const auto& x) { return analyze(x, orders, order_bound); }, t), "");
            return kOk;
        }
        if (*reduce) {
            const auto t = io::tuple_from_json(io::read_json_file(in_a));
            const auto* ct = std::get_if<MonodromyTuple<CyclotomicField>>(&t);
            if (!ct) throw Error(ErrorKind::FieldMismatch, "reduce expects a tuple over a cyclotomic field");
            emit(io::tuple_to_json(reduce_tuple(*ct, make_residue_map(ct->field, ell, k))), out_path);
            return kOk;
        }
        if (*certify) {
            const auto t = io::tuple_from_json(io::read_json_file(in_a));
            const auto* ft = std::get_if<MonodromyTuple<FiniteField>>(&t);
            if (!ft) throw Error(ErrorKind::FieldMismatch, "certify expects a tuple over a finite field");
            const auto cert = sl_certificate(*ft, *parse_mode(mode_text), q);
            emit(to_json(cert), out_path);
            return cert.verdict() ? kOk : kFail;
        }
        if (*pipeline) {
            if (pipeline_q) config.q = pipeline_q;
            if (!mode_text.empty()) config.mode = parse_mode(mode_text);
            const auto report = run_pipeline(config);
            emit(report.doc, out_path);
            if (report.failed) {
                std::cerr << "error: " << report.doc["error"]["message"].get<std::string>() << "\n";
                return kUsage;
            }
            return report.oracle_match && report.verdict.value_or(true) ? kOk : kFail;
        }
        if (*selfcheck) {
            const auto t = io::tuple_from_json(io::read_json_file(in_a));
            const auto rep = std::visit([&](const auto& x) { return mc_selfcheck(x, parse_scalar(x.field, lambda_text)); }, t);
            emit(io::selfcheck_to_json(rep), "");
            return rep.passed() ? kOk : kFail;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
