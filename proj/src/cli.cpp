#include "hilbchow/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "hilbchow/emit.hpp"
#include "hilbchow/errors.hpp"
#include "hilbchow/oracles.hpp"
#include "hilbchow/pipeline.hpp"
#include "hilbchow/ringfile.hpp"
#include "hilbchow/verify.hpp"

namespace hilbchow {

namespace {

struct CommonOpts {
    std::string file;
    std::string stage = "hilb3";
    std::string format = "text";
    bool rel3_half = false;
    std::string eqcz_sign = "+";
};

PipelineConfig to_config(const CommonOpts& o) {
    PipelineConfig cfg;
    cfg.rel3_half = o.rel3_half;
    cfg.eqcz_sign = o.eqcz_sign == "-" ? -1 : +1;
    return cfg;
}

VarietyData load_variety(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructureError("cannot open input file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return to_variety(parse_ring_file(ss.str()));
}

void echo_config(ResultDocument& doc, const PipelineConfig& cfg) {
    doc.rel3_constant = cfg.rel3_half ? "1/2" : "1";
    doc.eqcz_sign = cfg.eqcz_sign < 0 ? "-" : "+";
}

RankTable stage_ranks(const VarietyData& x, const std::string& stage,
                      const PipelineConfig& cfg, ResultDocument* doc) {
    RankTable ranks;
    if (stage == "hilb2") {
        Hilb2Model h2 = hilb2_model(x);
        ranks = h2.ranks;
        if (doc) {
            for (const auto& g : h2.bl.total->ring()->gens)
                doc->generators.push_back({g.display(), g.degree, g.display()});
            for (const auto& r : h2.bl.total->pres().relations)
                doc->relations.push_back(r.str());
            for (auto& c : oracle_checks(x, "hilb2", ranks)) doc->checks.push_back(c);
        }
    } else if (stage == "nested") {
        NestedModel nm = nested_model(x, cfg);
        ranks = nm.w.rank_table();
        if (doc) {
            for (const auto& g : nm.ambient->ring()->gens)
                doc->generators.push_back({g.display(), g.degree, g.display()});
            for (const auto& r : nm.ambient->pres().relations)
                doc->relations.push_back(r.str());
        }
    } else if (stage == "hilb3") {
        NestedModel nm = nested_model(x, cfg);
        Hilb3Model h3 = hilb3_model(nm);
        ranks = h3.ranks;
        if (doc) {
            int i = 0;
            for (const auto& g : h3.generators) {
                Poly nf = nm.ambient->normal_form(g);
                if (nf.is_zero()) continue;
                doc->generators.push_back(
                    {"g" + std::to_string(++i), nf.degree(), nf.str()});
            }
            for (auto& c : oracle_checks(x, "hilb3", ranks)) doc->checks.push_back(c);
        }
    } else {
        throw StructureError("unknown stage '" + stage + "' (hilb2|nested|hilb3)");
    }
    return ranks;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Chow ring models of Hilbert schemes of 2 and 3 points"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string element;
    std::string betti_csv;
    int npoints = 3;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_flag("--rel3-half", o.rel3_half,
                      "halve the constant term of the f-relation");
        cmd->add_option("--eqcz-e-sign", o.eqcz_sign,
                        "sign of e in the normal-bundle expansion")
            ->check(CLI::IsMember({"+", "-"}));
    };
    auto add_stage = [&](CLI::App* cmd) {
        cmd->add_option("--stage", o.stage, "hilb2|nested|hilb3")
            ->check(CLI::IsMember({"hilb2", "nested", "hilb3"}));
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* build = app.add_subcommand("build", "build a stage model and summarize it");
    build->add_option("file", o.file, "input .ring file")->required();
    add_stage(build);
    add_format(build);
    add_config(build);

    CLI::App* ranks = app.add_subcommand("ranks", "print the stage rank table");
    ranks->add_option("file", o.file)->required();
    add_stage(ranks);
    add_config(ranks);

    CLI::App* apply = app.add_subcommand("apply", "apply the push-pull operator");
    apply->add_option("file", o.file)->required();
    apply->add_option("--element", element, "class in the nested-model generators")
        ->required();
    add_config(apply);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("file", o.file)->required();
    add_format(verify);
    add_config(verify);

    CLI::App* oracle = app.add_subcommand("oracle", "independent oracle tables");
    CLI::App* goett = oracle->add_subcommand("goettsche", "surface generating function");
    goett->add_option("--betti", betti_csv, "b_0,b_1,b_2,b_3,b_4")->required();
    goett->add_option("-n", npoints, "number of points")->required();
    CLI::App* osym = oracle->add_subcommand("sym", "symmetric power ranks");
    osym->add_option("file", o.file)->required();
    osym->add_option("-n", npoints, "2 or 3")->required();
    oracle->require_subcommand(1);

    CLI::App* pres = app.add_subcommand("presentation",
                                        "generators and relations of the Hilb3 ring");
    pres->add_option("file", o.file)->required();
    add_format(pres);
    add_config(pres);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    PipelineConfig cfg = to_config(o);

    if (build->parsed()) {
        VarietyData x = load_variety(o.file);
        ResultDocument doc;
        doc.stage = o.stage;
        doc.input_name = x.name;
        doc.dimension = x.dim;
        echo_config(doc, cfg);
        doc.ranks = stage_ranks(x, o.stage, cfg, &doc);
        out << emit(doc, o.format);
        for (const auto& c : doc.checks)
            if (!c.pass) return 1;
        return 0;
    }
    if (ranks->parsed()) {
        VarietyData x = load_variety(o.file);
        out << ranks_str(stage_ranks(x, o.stage, cfg, nullptr)) << "\n";
        return 0;
    }
    if (apply->parsed()) {
        VarietyData x = load_variety(o.file);
        NestedModel nm = nested_model(x, cfg);
        Poly c = parse_expression(element, nm.ambient->ring());
        try {
            out << pushpull(nm, c).str() << "\n";
        } catch (const MathError& e) {
            // the element is user input, so a non-W class is an input error
            err << e.what() << "\n";
            return 2;
        }
        return 0;
    }
    if (verify->parsed()) {
        VarietyData x = load_variety(o.file);
        std::vector<CheckResult> checks = verify_variety(x, cfg);
        bool all = true;
        for (const auto& c : checks) all &= c.pass;
        if (o.format == "json") {
            ResultDocument doc;
            doc.stage = "verify";
            doc.input_name = x.name;
            doc.dimension = x.dim;
            echo_config(doc, cfg);
            doc.checks = checks;
            out << emit_json(doc);
        } else {
            for (const auto& c : checks) {
                out << "[" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
                if (!c.detail.empty()) out << ": " << c.detail;
                out << "\n";
            }
        }
        return all ? 0 : 1;
    }
    if (oracle->parsed()) {
        if (goett->parsed()) {
            BettiVector b;
            std::stringstream ss(betti_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) b.push_back(std::stol(tok));
            out << ranks_str(goettsche_betti(b, npoints)) << "\n";
            return 0;
        }
        VarietyData x = load_variety(o.file);
        if (npoints != 2 && npoints != 3)
            throw StructureError("oracle sym: n must be 2 or 3");
        out << ranks_str(sym_ranks(x, npoints)) << "\n";
        return 0;
    }
    if (pres->parsed()) {
        VarietyData x = load_variety(o.file);
        NestedModel nm = nested_model(x, cfg);
        Hilb3Model h3 = hilb3_model(nm);
        auto gens = default_presentation_generators(nm, h3);
        RingPresentation rp = extract_presentation(nm, h3, gens);
        ResultDocument doc;
        doc.stage = "hilb3-presentation";
        doc.input_name = x.name;
        doc.dimension = x.dim;
        echo_config(doc, cfg);
        doc.ranks = h3.ranks;
        for (size_t i = 0; i < gens.size(); ++i)
            doc.generators.push_back({rp.ring->gens[i].display(), rp.ring->gens[i].degree,
                                      gens[i].second.str()});
        for (const auto& r : rp.relations) doc.relations.push_back(r.str());
        CheckResult table_check;
        table_check.name = "presentation-rank-table";
        table_check.pass = make_model(rp)->rank_table() == h3.ranks;
        doc.checks.push_back(table_check);
        out << emit(doc, o.format);
        return table_check.pass ? 0 : 1;
    }
    err << "no command\n";
    return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const StructureError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hilbchow
