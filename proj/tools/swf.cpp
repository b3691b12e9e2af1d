#include "swf/comparison.hpp"
#include "swf/crossing.hpp"
#include "swf/errors.hpp"
#include "swf/json_util.hpp"
#include "swf/parallel.hpp"
#include "swf/reports_json.hpp"
#include "swf/spectral_flow.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw swf::ParseError(path + ": cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

swf::FloerData load_floer(const std::string& path)
{
    auto j = swf::json_util::parse_bytes(read_file(path));
    return swf::floer_from_json(j);
}

swf::CrossingData load_crossing(const std::string& path)
{
    return swf::crossing_from_json(swf::json_util::parse_bytes(read_file(path)));
}

struct Outcome {
    ordered_json doc;
    int code = 0;
};

// Emits the validation report instead of a result when the data is not admissible.
bool admissible_or_report(const swf::FloerData& data, Outcome& out)
{
    auto rep = swf::validate(data);
    if (rep.ok) return true;
    out.doc = swf::to_json(rep);
    out.code = 1;
    return false;
}

ordered_json pages_json(const swf::FloerData& data, swf::TruncationPolicy p, swf::Filtration f)
{
    auto [e0, e1] = swf::spectral_pages(data, p, f);
    ordered_json j;
    j["E0"] = swf::to_json(e0);
    j["E1"] = swf::to_json(e1);
    return j;
}

}  // namespace

int main(int argc, char** argv)
{
    swf::configure_threads_from_env();

    CLI::App app{"Equivariant Floer complex toolkit"};
    app.require_subcommand(1);
    bool pretty = false;
    std::string output;
    app.add_flag("--pretty", pretty, "indent the JSON report");
    app.add_option("--output", output, "write the report to a file instead of stdout");

    std::string file;
    int max_power = 0;
    bool plain = false, equivariant = false;

    auto* validate = app.add_subcommand("validate", "check the admissibility identities");
    validate->add_option("file", file)->required();

    auto* homology = app.add_subcommand("homology", "homology ranks of the equivariant or plain complex");
    homology->add_option("file", file)->required();
    homology->add_option("--max-power", max_power)->required()->check(CLI::NonNegativeNumber);
    auto* eq_flag = homology->add_flag("--equivariant", equivariant);
    homology->add_flag("--plain", plain)->excludes(eq_flag);

    auto* compare = app.add_subcommand("compare", "i-map, Q homology, exact sequence and spectral pages");
    compare->add_option("file", file)->required();
    compare->add_option("--max-power", max_power)->required()->check(CLI::NonNegativeNumber);

    std::string cycle;
    auto* delta = app.add_subcommand("delta", "connecting homomorphism of a plain cycle");
    delta->add_option("file", file)->required();
    delta->add_option("--cycle", cycle, "cycle JSON, inline or a file path")->required();
    delta->add_option("--max-power", max_power)->required()->check(CLI::NonNegativeNumber);

    auto* wallcross = app.add_subcommand("wallcross", "rank isomorphism and invariant change across a wall");
    wallcross->add_option("file", file)->required();
    wallcross->add_option("--max-power", max_power)->required()->check(CLI::NonNegativeNumber);

    auto* morphisms = app.add_subcommand("morphisms", "verify the crossing maps I, J, H");
    morphisms->add_option("file", file)->required();
    morphisms->add_option("--max-power", max_power)->required()->check(CLI::NonNegativeNumber);

    auto* specflow = app.add_subcommand("specflow", "spectral flow of a sampled Hermitian path");
    specflow->add_option("file", file)->required();

    double lambda_prime = 0, gamma = 0;
    auto* kuranishi = app.add_subcommand("kuranishi", "sign predictions of the local crossing model");
    kuranishi->add_option("--lambda-prime", lambda_prime)->required();
    kuranishi->add_option("--gamma", gamma)->required();

    std::uint64_t seed = 0;
    swf::GeneratorProfile profile;
    bool no_reducible = false;
    auto* generate = app.add_subcommand("generate", "sample admissible data");
    generate->add_option("--seed", seed)->required();
    generate->add_option("--orbits", profile.orbit_count)->required();
    generate->add_option("--index-min", profile.index_min)->required();
    generate->add_option("--index-max", profile.index_max)->required();
    generate->add_option("--magnitude", profile.magnitude)->check(CLI::PositiveNumber);
    generate->add_flag("--no-reducible", no_reducible);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "swf: parse error: " << e.what() << "\n";
        return 2;
    }

    Outcome out;
    const swf::TruncationPolicy policy{max_power};
    try {
        if (validate->parsed()) {
            auto rep = swf::validate(load_floer(file));
            out.doc = swf::to_json(rep);
            out.code = rep.ok ? 0 : 1;
        } else if (homology->parsed()) {
            auto data = load_floer(file);
            if (admissible_or_report(data, out)) {
                auto table = plain ? swf::swf_homology(data) : swf::equivariant_homology(data, policy);
                out.doc["complex"] = plain ? "plain" : "equivariant";
                out.doc["max_power"] = max_power;
                auto body = swf::to_json(table);
                for (auto& [k, v] : body.items()) out.doc[k] = v;
            }
        } else if (compare->parsed()) {
            auto data = load_floer(file);
            if (admissible_or_report(data, out)) {
                swf::Integer worst = 0;
                for (const auto& [d, m] : swf::chain_map_residual(swf::chain_map_i(data, policy)))
                    for (const auto& t : m.triplets()) worst = std::max<swf::Integer>(worst, abs(t.value.get_num()));
                auto les = swf::exact_sequence_report(data, policy);
                out.doc["max_power"] = max_power;
                out.doc["i_residual"] = swf::integer_json(worst);
                out.doc["q_homology"] = swf::to_json(swf::q_homology(data, policy));
                out.doc["exact_sequence"] = swf::to_json(les);
                out.doc["spectral_pages"] = {
                    {"equivariant", pages_json(data, policy, swf::Filtration::equivariant)},
                    {"q", pages_json(data, policy, swf::Filtration::q)},
                    {"plain", pages_json(data, policy, swf::Filtration::plain)}};
                out.code = worst == 0 && les.ok ? 0 : 1;
            }
        } else if (delta->parsed()) {
            auto data = load_floer(file);
            if (admissible_or_report(data, out)) {
                std::string text = cycle.find('{') != std::string::npos ? cycle : read_file(cycle);
                auto z = swf::cycle_from_json(swf::json_util::parse_bytes(text), "$cycle");
                auto r = swf::connecting_delta(data, z, policy);
                out.doc["degree"] = z.degree;
                out.doc["theta_power"] = r.theta_power ? ordered_json(*r.theta_power) : ordered_json(nullptr);
                out.doc["coefficient"] = swf::rational_json(r.coefficient);
                out.doc["closed_form"] = swf::rational_json(swf::delta_closed_form(data, z));
                out.doc["rounds"] = r.rounds;
            }
        } else if (wallcross->parsed()) {
            auto cd = load_crossing(file);
            if (admissible_or_report(cd.side0, out) && admissible_or_report(cd.side1, out)) {
                auto rep = swf::wallcross_check(cd, policy);
                out.doc = swf::to_json(rep);
                out.code = rep.ok ? 0 : 1;
            }
        } else if (morphisms->parsed()) {
            auto cd = load_crossing(file);
            if (admissible_or_report(cd.side0, out) && admissible_or_report(cd.side1, out)) {
                auto rep = swf::verify_crossing(cd, policy);
                out.doc = swf::to_json(rep);
                out.code = rep.ok ? 0 : 1;
            }
        } else if (specflow->parsed()) {
            auto path = swf::parse_path(read_file(file));
            auto r = swf::spectral_flow_detail(path);
            ordered_json walls = ordered_json::array();
            for (const auto& s : path.samples) walls.push_back(swf::wall_signature(s.matrix, path.tol));
            out.doc["dim"] = path.dim();
            out.doc["tol"] = path.tol;
            out.doc["samples"] = path.samples.size();
            out.doc["refinements"] = r.levels;
            out.doc["refined_samples"] = r.samples;
            out.doc["spectral_flow"] = r.flow;
            out.doc["wall_signatures"] = walls;
        } else if (kuranishi->parsed()) {
            out.doc["lambda_prime"] = lambda_prime;
            out.doc["gamma"] = gamma;
            auto body = swf::to_json(swf::kuranishi_crossing({lambda_prime, gamma}));
            for (auto& [k, v] : body.items()) out.doc[k] = v;
        } else if (generate->parsed()) {
            profile.with_reducible = !no_reducible;
            out.doc = swf::floer_to_json(swf::generate_admissible(seed, profile));
        }
    } catch (const swf::Error& e) {
        std::cerr << "swf: " << e.kind() << ": " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::invalid_argument& e) {
        std::cerr << "swf: parse error: " << e.what() << "\n";
        return 2;
    }

    std::string text = (pretty ? out.doc.dump(2) : out.doc.dump()) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            std::cerr << "swf: parse error: cannot write " << output << "\n";
            return 2;
        }
        f << text;
    }
    return out.code;
}
