// Command-line entry point: field and matrix utilities, graph export, clique
// queries, canonical-form construction, map classification, homomorphism
// search, and the verification suites.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "matgeo/harness.hpp"

using namespace matgeo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += " ";
        out += p;
    }
    return out;
}

Space parse_space(const std::vector<std::string>& field_tokens, const std::string& shape) {
    const Field& f = parse_field_spec(join(field_tokens));
    auto comma = shape.find(',');
    if (comma == std::string::npos) throw parse_error("shape must be m,n");
    int m = std::stoi(shape.substr(0, comma));
    int n = std::stoi(shape.substr(comma + 1));
    if (m < 1 || n < 1) throw parse_error("shape entries must be positive");
    return Space(f, m, n);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    return out;
}

void load_field_table(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        unsigned q = 0, p = 0;
        std::string csv;
        is >> q >> p >> csv;
        if (!q || !p || csv.empty()) throw parse_error("field table line: " + line);
        std::vector<unsigned> poly;
        std::istringstream cs(csv);
        std::string c;
        while (std::getline(cs, c, ',')) poly.push_back(std::stoul(c));
        field_table().override_poly(q, p, std::move(poly));
    }
}

void print_classification(const Classification& c, const MapTable& t, std::ostream& os) {
    os << "verdict " << verdict_name(c.verdict) << "\n";
    if (c.bad_edge)
        os << "witness-edge " << t.src.decode(c.bad_edge->first).text() << " => "
           << t.src.decode(c.bad_edge->second).text() << "\n";
    if (c.clique) {
        os << "clique-kind " << (c.clique->kind == SetKind::RowType ? "row" : "col") << "\n";
        os << "clique-offset " << c.clique->offset.text() << "\n";
    }
    if (c.form) {
        os << "form " << variant_name(c.form->variant) << "\n";
        os << "P " << c.form->p.text() << "\n";
        os << "Q " << c.form->q.text() << "\n";
        if (is_semrl(c.form->variant)) os << "L " << c.form->l.text() << "\n";
        if (is_shifted(c.form->variant)) {
            os << "A0 " << c.form->a0.text() << "\n";
            os << "offset " << c.form->offset.text() << "\n";
        }
        std::string tau;
        for (Elt v : c.form->tau.table) tau += (tau.empty() ? "" : ",") + std::to_string(v);
        os << "tau " << tau << "\n";
    }
    if (c.degeneracy) os << "degenerate-at " << c.degeneracy->a.text() << "\n";
    if (c.range) os << "range-shift " << c.range->shift.text() << "\n";
    if (c.cap_annotation) os << "cap-annotation true\n";
    for (const auto& line : c.transcript) os << "note " << line << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-metric matrix graphs over finite fields"};
    app.require_subcommand(1);
    unsigned jobs = 1;
    std::uint64_t cap = 0, seed = 0;
    std::string field_table_path;
    app.add_option("--jobs", jobs, "worker count for parallel sweeps");
    app.add_option("--cap", cap, "enumeration cap override");
    app.add_option("--seed", seed, "seed for randomized operations (default 0)");
    app.add_option("--field-table", field_table_path, "defining-polynomial override file");

    // ---- field ----------------------------------------------------------
    auto* field_cmd = app.add_subcommand("field", "field arithmetic and homomorphism enumeration");
    auto* field_homs = field_cmd->add_subcommand("homs", "enumerate homomorphisms between two fields");
    std::vector<std::string> fh_src, fh_dst;
    bool fh_tables = false;
    field_homs->add_option("--src", fh_src, "source field spec")->expected(3)->required();
    field_homs->add_option("--dst", fh_dst, "destination field spec")->expected(3)->required();
    field_homs->add_flag("--tables", fh_tables, "print the full tables");
    auto* field_arith = field_cmd->add_subcommand("arith", "evaluate a field operation");
    std::vector<std::string> fa_field;
    std::string fa_op;
    unsigned fa_a = 0, fa_b = 0, fa_i = 0;
    field_arith->add_option("--field", fa_field, "field spec")->expected(3)->required();
    field_arith->add_option("--op", fa_op, "add|sub|mul|div|neg|inv|pow|frobenius")->required();
    field_arith->add_option("--a", fa_a, "first operand index")->required();
    field_arith->add_option("--b", fa_b, "second operand index");
    field_arith->add_option("--i", fa_i, "power index");

    // ---- mat ------------------------------------------------------------
    auto* mat_cmd = app.add_subcommand("mat", "matrix utilities");
    std::vector<std::string> mat_field;
    std::string mat_shape, mat_entries, mat_other;
    int mat_rank_want = -1;
    auto* mat_rank = mat_cmd->add_subcommand("rank", "rank of a matrix");
    auto* mat_nf = mat_cmd->add_subcommand("normal-form", "P diag(I_r,0) Q factorization");
    auto* mat_gi = mat_cmd->add_subcommand("ginverse", "a generalized inverse");
    auto* mat_dist = mat_cmd->add_subcommand("distance", "rank distance of two matrices");
    auto* mat_adj = mat_cmd->add_subcommand("adjacent", "adjacency of two matrices");
    auto* mat_le = mat_cmd->add_subcommand("minus-le", "minus partial order");
    auto* mat_enum = mat_cmd->add_subcommand("enumerate", "all matrices of one rank");
    for (auto* sub : {mat_rank, mat_nf, mat_gi, mat_dist, mat_adj, mat_le, mat_enum}) {
        sub->add_option("--field", mat_field, "field spec")->expected(3)->required();
        sub->add_option("--shape", mat_shape, "m,n")->required();
    }
    for (auto* sub : {mat_rank, mat_nf, mat_gi, mat_dist, mat_adj, mat_le})
        sub->add_option("--entries", mat_entries, "row-major element indices")->required();
    for (auto* sub : {mat_dist, mat_adj, mat_le})
        sub->add_option("--other", mat_other, "second matrix")->required();
    mat_enum->add_option("--rank", mat_rank_want, "rank")->required();

    // ---- graph ----------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "export the matrix graph");
    std::vector<std::string> graph_field;
    std::string graph_shape, graph_format = "dot", graph_out;
    graph_cmd->add_option("--field", graph_field, "field spec")->expected(3)->required();
    graph_cmd->add_option("--shape", graph_shape, "m,n")->required();
    graph_cmd->add_option("--format", graph_format, "dot|edges");
    graph_cmd->add_option("--out", graph_out, "output file (stdout when absent)");

    // ---- cliques --------------------------------------------------------
    auto* cliques_cmd = app.add_subcommand("cliques", "maximal adjacent sets");
    std::vector<std::string> cl_field;
    std::string cl_shape, cl_at, cl_a, cl_b;
    auto* cl_through = cliques_cmd->add_subcommand("through", "maximal sets containing a matrix");
    auto* cl_pair = cliques_cmd->add_subcommand("pair", "the two maximal sets of an edge");
    for (auto* sub : {cl_through, cl_pair}) {
        sub->add_option("--field", cl_field, "field spec")->expected(3)->required();
        sub->add_option("--shape", cl_shape, "m,n")->required();
    }
    cl_through->add_option("--at", cl_at, "matrix entries")->required();
    cl_pair->add_option("--a", cl_a, "first matrix")->required();
    cl_pair->add_option("--b", cl_b, "second matrix")->required();

    // ---- construct ------------------------------------------------------
    auto* construct_cmd = app.add_subcommand("construct", "tabulate a canonical form");
    std::string co_form, co_src_shape, co_dst_shape, co_p, co_q, co_l, co_a0, co_offset, co_out;
    std::string co_target_kind = "row", co_target_dir, co_target_offset, co_weights;
    std::vector<std::string> co_src_field, co_dst_field;
    unsigned co_tau = 0;
    construct_cmd->add_option("--form", co_form,
                              "standard|transpose|semrl|semrl-t|shifted-semrl|shifted-semrl-t|colouring")
        ->required();
    construct_cmd->add_option("--src-field", co_src_field, "source field spec")->expected(3)->required();
    construct_cmd->add_option("--src-shape", co_src_shape, "m,n")->required();
    construct_cmd->add_option("--dst-field", co_dst_field, "destination field spec")->expected(3)->required();
    construct_cmd->add_option("--dst-shape", co_dst_shape, "m,n")->required();
    construct_cmd->add_option("--P", co_p, "left parameter matrix");
    construct_cmd->add_option("--Q", co_q, "right parameter matrix");
    construct_cmd->add_option("--tau", co_tau, "index into the enumerated field homomorphisms");
    construct_cmd->add_option("--L", co_l, "L parameter (Semrl forms)");
    construct_cmd->add_option("--A0", co_a0, "shift base in the source space");
    construct_cmd->add_option("--offset", co_offset, "image offset in the destination space");
    construct_cmd->add_option("--target-kind", co_target_kind, "row|col (colouring target)");
    construct_cmd->add_option("--target-direction", co_target_dir, "target clique direction");
    construct_cmd->add_option("--target-offset", co_target_offset, "target clique offset");
    construct_cmd->add_option("--weights", co_weights, "colouring weights, tower-field indices");
    construct_cmd->add_option("--out", co_out, "map table output file (stdout when absent)");

    // ---- classify -------------------------------------------------------
    auto* classify_cmd = app.add_subcommand("classify", "classify an explicit map table");
    std::string classify_path;
    classify_cmd->add_option("table", classify_path, "map table file")->required();

    // ---- search ---------------------------------------------------------
    auto* search_cmd = app.add_subcommand("search", "backtracking homomorphism search");
    std::string search_problem, search_mode = "first";
    std::uint64_t search_limit = 1, search_budget = 0;
    search_cmd->add_option("--problem", search_problem, "problem file")->required();
    search_cmd->add_option("--mode", search_mode, "first|enumerate|sample");
    search_cmd->add_option("--limit", search_limit, "solution limit");
    search_cmd->add_option("--budget", search_budget, "node budget override");

    // ---- verify ---------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite = "all", verify_out;
    verify_cmd->add_option("--suite", verify_suite,
                           "metric|additive|semrl|colouring-bound|degenerate-range|nondegenerate|all");
    verify_cmd->add_option("--out", verify_out, "report file (stdout when absent)");

    // global flags may follow a subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands([](const CLI::App*) { return true; })) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        config().jobs = jobs;
        if (cap) {
            config().enumeration_cap = cap;
            config().pair_cap = cap;
        }
        if (!field_table_path.empty()) load_field_table(field_table_path);

        if (*field_homs) {
            const Field& src = parse_field_spec(join(fh_src));
            const Field& dst = parse_field_spec(join(fh_dst));
            auto homs = enumerate_field_homs(src, dst);
            std::cout << homs.size() << "\n";
            if (fh_tables)
                for (const auto& h : homs) {
                    std::string t;
                    for (Elt v : h.table) t += (t.empty() ? "" : ",") + std::to_string(v);
                    std::cout << t << "\n";
                }
            return kExitOk;
        }
        if (*field_arith) {
            const Field& f = parse_field_spec(join(fa_field));
            Elt a = static_cast<Elt>(fa_a), b = static_cast<Elt>(fa_b);
            Elt r;
            if (fa_op == "add") r = f.add(a, b);
            else if (fa_op == "sub") r = f.sub(a, b);
            else if (fa_op == "mul") r = f.mul(a, b);
            else if (fa_op == "div") r = f.div(a, b);
            else if (fa_op == "neg") r = f.neg(a);
            else if (fa_op == "inv") r = f.inv(a);
            else if (fa_op == "pow") r = f.pow(a, fa_i);
            else if (fa_op == "frobenius") r = f.frobenius(a, fa_i);
            else throw error("unknown op: " + fa_op);
            std::cout << r << "\n";
            return kExitOk;
        }
        if (*mat_rank || *mat_nf || *mat_gi || *mat_dist || *mat_adj || *mat_le || *mat_enum) {
            Space s = parse_space(mat_field, mat_shape);
            if (*mat_enum) {
                for (const Mat& m : enumerate_rank(*s.field, s.m, s.n, mat_rank_want))
                    std::cout << m.text() << "\n";
                return kExitOk;
            }
            Mat a = s.parse(mat_entries);
            if (*mat_rank) std::cout << rank(a) << "\n";
            if (*mat_nf) {
                NormalForm nf = normal_form(a);
                std::cout << "P " << nf.p.text() << "\n";
                std::cout << "Q " << nf.q.text() << "\n";
                std::cout << "r " << nf.r << "\n";
            }
            if (*mat_gi) std::cout << g_inverse(a).text() << "\n";
            if (*mat_dist) std::cout << distance(a, s.parse(mat_other)) << "\n";
            if (*mat_adj) std::cout << (is_adjacent(a, s.parse(mat_other)) ? "true" : "false") << "\n";
            if (*mat_le) std::cout << (minus_le(a, s.parse(mat_other)) ? "true" : "false") << "\n";
            return kExitOk;
        }
        if (*graph_cmd) {
            Space s = parse_space(graph_field, graph_shape);
            std::string text = graph_export(*s.field, s.m, s.n, graph_format);
            if (graph_out.empty()) {
                std::cout << text;
            } else {
                auto out = open_output(graph_out);
                out << text;
            }
            return kExitOk;
        }
        if (*cl_through) {
            Space s = parse_space(cl_field, cl_shape);
            for (const MaximalSet& m : maximal_sets_through(s.parse(cl_at))) {
                std::string dir;
                for (Elt v : m.direction) dir += (dir.empty() ? "" : ",") + std::to_string(v);
                std::cout << (m.kind == SetKind::RowType ? "row" : "col") << " direction " << dir
                          << " offset " << m.offset.text() << "\n";
            }
            return kExitOk;
        }
        if (*cl_pair) {
            Space s = parse_space(cl_field, cl_shape);
            auto [rowm, colm] = maximal_sets_containing_pair(s.parse(cl_a), s.parse(cl_b));
            for (const MaximalSet* m : {&rowm, &colm}) {
                std::string dir;
                for (Elt v : m->direction) dir += (dir.empty() ? "" : ",") + std::to_string(v);
                std::cout << (m->kind == SetKind::RowType ? "row" : "col") << " direction " << dir
                          << " offset " << m->offset.text() << "\n";
            }
            return kExitOk;
        }
        if (*construct_cmd) {
            Space src = parse_space(co_src_field, co_src_shape);
            Space dst = parse_space(co_dst_field, co_dst_shape);
            MapTable table;
            if (co_form == "colouring") {
                std::vector<Elt> dir;
                {
                    std::istringstream is(co_target_dir);
                    std::string tok;
                    while (std::getline(is, tok, ',')) dir.push_back(static_cast<Elt>(std::stoul(tok)));
                }
                Mat offset = co_target_offset.empty() ? Mat(*dst.field, dst.m, dst.n)
                                                      : dst.parse(co_target_offset);
                MaximalSet target = co_target_kind == "col" ? col_set_through(offset, dir)
                                                            : row_set_through(offset, dir);
                std::vector<Elt> weights;
                std::istringstream is(co_weights);
                std::string tok;
                while (std::getline(is, tok, ',')) weights.push_back(static_cast<Elt>(std::stoul(tok)));
                table = make_colouring(src, target, weights);
            } else {
                auto homs = enumerate_field_homs(*src.field, *dst.field);
                if (co_tau >= homs.size()) throw error("tau index out of range; " +
                                                       std::to_string(homs.size()) + " homomorphisms exist");
                const FieldHom& tau = homs[co_tau];
                FormVariant variant;
                if (co_form == "standard") variant = FormVariant::AdditiveStandard;
                else if (co_form == "transpose") variant = FormVariant::AdditiveTranspose;
                else if (co_form == "semrl") variant = FormVariant::SemrlStandard;
                else if (co_form == "semrl-t") variant = FormVariant::SemrlTranspose;
                else if (co_form == "shifted-semrl") variant = FormVariant::ShiftedSemrlStandard;
                else if (co_form == "shifted-semrl-t") variant = FormVariant::ShiftedSemrlTranspose;
                else throw error("unknown form: " + co_form);
                bool tr = is_transpose(variant);
                Space pspace = is_semrl(variant) ? Space(*dst.field, dst.m, dst.m)
                                                 : Space(*dst.field, dst.m, tr ? src.n : src.m);
                Space qspace = is_semrl(variant) ? Space(*dst.field, dst.n, dst.n)
                                                 : Space(*dst.field, tr ? src.m : src.n, dst.n);
                Mat p = pspace.parse(co_p), q = qspace.parse(co_q);
                CanonicalForm form;
                if (!is_semrl(variant)) {
                    form = additive_form(variant, src, dst, p, tau, q);
                } else {
                    Space lspace(*dst.field, src.n, src.n);
                    Mat l = co_l.empty() ? Mat(*dst.field, src.n, src.n) : lspace.parse(co_l);
                    Mat a0 = co_a0.empty() ? Mat(*src.field, src.m, src.n) : src.parse(co_a0);
                    Mat offset = co_offset.empty() ? Mat(*dst.field, dst.m, dst.n) : dst.parse(co_offset);
                    form = is_shifted(variant) ? semrl_form(variant, src, dst, p, l, tau, q, a0, offset)
                                               : semrl_form(variant, src, dst, p, l, tau, q);
                }
                table = tabulate(form);
            }
            if (co_out.empty()) {
                table.write(std::cout);
            } else {
                auto out = open_output(co_out);
                table.write(out);
            }
            return kExitOk;
        }
        if (*classify_cmd) {
            auto in = open_input(classify_path);
            MapTable t = MapTable::read(in);
            Classification c = classify(t);
            print_classification(c, t, std::cout);
            return kExitOk;
        }
        if (*search_cmd) {
            auto in = open_input(search_problem);
            SearchProblem p = read_problem(in);
            if (seed) p.seed = seed;
            if (search_budget) p.budget = search_budget;
            if (search_mode == "first") {
                SearchResult r = search_hom(p);
                std::cout << (r.status == SearchStatus::Found      ? "found"
                              : r.status == SearchStatus::Unsat    ? "unsat"
                                                                   : "budget-exceeded")
                          << " nodes " << r.stats.nodes << " backtracks " << r.stats.backtracks
                          << " max-depth " << r.stats.max_depth << "\n";
                if (r.table) r.table->write(std::cout);
                if (r.status == SearchStatus::Found) return kExitOk;
                return r.status == SearchStatus::Unsat ? kExitVerifyFail : kExitDomain;
            }
            if (search_mode == "enumerate") {
                auto tables = enumerate_homs(p, search_limit);
                std::cout << tables.size() << "\n";
                for (const auto& t : tables) t.write(std::cout);
                return tables.empty() ? kExitVerifyFail : kExitOk;
            }
            if (search_mode == "sample") {
                auto tables = sample_homs(p, search_limit, p.seed);
                std::cout << tables.size() << "\n";
                for (const auto& t : tables) t.write(std::cout);
                return tables.empty() ? kExitVerifyFail : kExitOk;
            }
            throw error("unknown search mode: " + search_mode);
        }
        if (*verify_cmd) {
            auto reports = harness::run_suite(verify_suite, seed);
            if (verify_out.empty()) {
                write_reports(std::cout, reports);
            } else {
                auto out = open_output(verify_out);
                write_reports(out, reports);
            }
            return all_pass(reports) ? kExitOk : kExitVerifyFail;
        }
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
