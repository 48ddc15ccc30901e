#include "orbicalc/azumaya.hpp"
#include "orbicalc/blocks.hpp"
#include "orbicalc/catalog.hpp"
#include "orbicalc/harness.hpp"
#include "orbicalc/json_io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace orbicalc;

namespace {

// A file path, an inline JSON document, or a bare catalog name.
Json load_json(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        try {
            return Json::parse(in);
        } catch (const Json::exception& e) {
            throw InputError(arg + ": " + e.what());
        }
    }
    if (is_catalog_name(arg)) return Json(arg);
    try {
        return Json::parse(arg);
    } catch (const Json::exception&) {
        throw InputError("'" + arg + "' is neither a file, a catalog group nor a JSON document");
    }
}

std::shared_ptr<const FiniteGroup> load_group(const std::string& arg) {
    return std::make_shared<const FiniteGroup>(group_from_json(load_json(arg)));
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_twisted(const std::string& group_arg, const std::string& cocycle_arg) {
    auto g = load_group(group_arg);
    auto alpha = cocycle_from_json(load_json(cocycle_arg), g);
    const auto h = hh0(twisted_group_algebra(alpha));
    const auto regular = alpha_regular_classes(alpha);
    Json out{{"root_order", alpha.root_order},
             {"hh0", h.dim},
             {"alpha_regular_classes", regular},
             {"equal", h.dim == static_cast<int>(regular.size())}};
    print(out);
    return h.dim == static_cast<int>(regular.size()) ? 0 : 1;
}

int cmd_azumaya(const std::string& gset_arg, const std::string& algebra_arg) {
    const Json gj = load_json(gset_arg);
    GSet x = gset_from_json(gj);
    const FinDimAlgebra f = algebra_from_json(load_json(algebra_arg), x.group);
    if (!f.group || f.action.empty() || f.support.empty())
        throw InputError("azumaya-check: the algebra needs a group action and a support map");
    bool ok = true;
    Json per = Json::array();
    for (auto& cls : cyclic_subgroup_classes(*x.group)) {
        auto res = restrict_to_fixed(f, x, cls.rep);
        auto rep = verify_strongly_graded(res.algebra, static_cast<int>(res.points.size()));
        ok = ok && rep.ok && rep.products_surjective;
        per.push_back({{"sigma", cls.rep.elements},
                       {"points", res.points},
                       {"component_dims", rep.component_dims},
                       {"products_surjective", rep.products_surjective},
                       {"tensor_dim", rep.tensor_dim},
                       {"image_rank", rep.image_rank},
                       {"skew_dim", rep.skew_dim},
                       {"ok", rep.ok},
                       {"witness", rep.witness}});
    }
    auto hh = twisted_hh0_decomposition(f, x);
    Json terms = Json::array();
    for (auto& t : hh.terms) terms.push_back({{"class", t.cls}, {"lhs", t.lhs}, {"rhs", t.rhs}});
    ok = ok && hh.ok;
    print({{"strongly_graded", per},
           {"hh0", {{"lhs", hh.lhs}, {"rhs", hh.rhs}, {"stable", hh.stable}, {"injective", hh.injective}, {"terms", terms}}},
           {"ok", ok}});
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbicalc: exact orbifold decompositions of finite G-sets and their certificates"};
    app.require_subcommand(1);

    std::string group_arg, gset_arg, cocycle_arg, algebra_arg, mode_arg = "split";
    bool json_out = false;

    auto* chartable = app.add_subcommand("chartable", "character table as JSON");
    chartable->add_option("group", group_arg, "catalog name, group JSON or file")->required();

    auto* vistoli = app.add_subcommand("vistoli", "decomposition of R(G)[1/|G|] with its certificate");
    vistoli->add_option("group", group_arg, "catalog name, group JSON or file")->required();
    vistoli->add_option("--mode", mode_arg, "split or rational");

    auto* orbifold = app.add_subcommand("orbifold", "orbifold decomposition of K0 of a G-set");
    orbifold->add_option("group", group_arg, "catalog name, group JSON or file")->required();
    orbifold->add_option("gset", gset_arg, "G-set JSON or file")->required();
    orbifold->add_option("--mode", mode_arg, "split or rational");
    orbifold->add_flag("--json", json_out, "full decomposition as JSON");

    auto* twisted = app.add_subcommand("twisted", "HH0 of a twisted group algebra against alpha-regular classes");
    twisted->add_option("group", group_arg, "catalog name, group JSON or file")->required();
    twisted->add_option("cocycle", cocycle_arg, "cocycle JSON or file")->required();

    auto* azumaya = app.add_subcommand("azumaya-check", "graded centers and degree-zero HH of an algebra over a G-set");
    azumaya->add_option("gset", gset_arg, "G-set JSON or file")->required();
    azumaya->add_option("algebra", algebra_arg, "algebra JSON or file")->required();

    long ext = 0;
    auto* blocks = app.add_subcommand("blocks", "blocks of an algebra before and after a cyclotomic extension");
    blocks->add_option("algebra", algebra_arg, "algebra JSON or file")->required();
    blocks->add_option("--ext", ext, "conductor of the extension field")->required();

    CorpusConfig config;
    std::string report_path, suites_arg = "all";
    std::vector<std::string> extra;
    auto* verify = app.add_subcommand("verify", "run the property suites over the seeded corpus");
    verify->add_option("--max-order", config.max_order, "largest catalog group order")->capture_default_str();
    verify->add_option("--gsets", config.gsets_per_group, "random G-sets per group")->capture_default_str();
    verify->add_option("--seed", config.seed, "corpus seed")->capture_default_str();
    verify->add_option("--twisted-max-order", config.twisted_max_order, "largest group order for cocycles")->capture_default_str();
    verify->add_option("--suites", suites_arg, "comma separated suites, 'all' or ''")->capture_default_str();
    verify->add_option("--extra-group", extra, "NAME=GROUP (JSON or file); may repeat");
    verify->add_option("--json", report_path, "write the JSON-lines report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*chartable) {
            print(character_table_to_json(*character_table(*load_group(group_arg))));
            return 0;
        }
        if (*vistoli) {
            print(vistoli_to_json(vistoli_decompose(*load_group(group_arg), parse_mode(mode_arg))));
            return 0;
        }
        if (*orbifold) {
            auto g = load_group(group_arg);
            GSet x = gset_from_json(load_json(gset_arg), g);
            auto d = orbifold_decompose(x, parse_mode(mode_arg));
            if (json_out) {
                print(orbifold_to_json(d));
            } else {
                std::cout << "mode " << to_string(d.mode) << ", |X| = " << x.size << ", K0 rank " << d.k0.rank()
                          << "\nsummand ranks:";
                for (int r : d.summand_ranks()) std::cout << ' ' << r;
                std::cout << "\nSNF certificate: invertible over Z[1/" << g->order() << "] on " << d.block_snf.size()
                          << " orbit blocks\n";
            }
            return 0;
        }
        if (*twisted) return cmd_twisted(group_arg, cocycle_arg);
        if (*azumaya) return cmd_azumaya(gset_arg, algebra_arg);
        if (*blocks) {
            auto rep = simple_block_count(algebra_from_json(load_json(algebra_arg)), ext);
            print(blocks_to_json(rep));
            return rep.injective ? 0 : 1;
        }
        if (*verify) {
            if (suites_arg != "all") {
                config.suites.clear();
                std::stringstream ss(suites_arg);
                for (std::string s; std::getline(ss, s, ',');)
                    if (!s.empty()) config.suites.push_back(s);
            }
            for (auto& e : extra) {
                auto eq = e.find('=');
                if (eq == std::string::npos || eq == 0) throw InputError("--extra-group expects NAME=GROUP");
                config.extra_groups.emplace_back(e.substr(0, eq), load_json(e.substr(eq + 1)));
            }
            Report report = run_suite(config);
            if (!report_path.empty()) {
                std::ofstream out(report_path);
                if (!out) throw InputError("cannot write " + report_path);
                out << report.jsonl();
            }
            std::cout << report.summary();
            return report.passed() ? 0 : 1;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
