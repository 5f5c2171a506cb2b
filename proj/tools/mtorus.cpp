// Command-line front end: marked graph maps in, fold traces, T/G gluing
// files and SnapPea triangulation files out.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "mtor/fold.hpp"
#include "mtor/graph.hpp"
#include "mtor/group.hpp"
#include "mtor/mapping_torus.hpp"
#include "mtor/marked_map_io.hpp"
#include "mtor/snappea.hpp"
#include "mtor/surface.hpp"
#include "mtor/tg.hpp"

namespace {

using namespace mtor;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Atomic output: write a temporary file next to the target, then rename.
void write_output(const std::string& path, const std::string& content) {
    if (path == "-" || path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ParseError("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, target);
}

bool looks_like_tg(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find("//");
        if (pos != std::string::npos)
            line = line.substr(0, pos);
        std::istringstream ls(line);
        std::string token;
        if (!(ls >> token))
            continue;
        return token == "T" || token == "G";
    }
    return false;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int verify_one(const std::string& path, std::ostream& log) {
    std::string text = read_input(path);
    std::ostringstream report;
    bool is_tg = has_suffix(path, ".tg") || (!has_suffix(path, ".map") && looks_like_tg(text));
    if (is_tg) {
        Triangulation3 t = realize(parse_tg_text(text));
        LinkReport links = vertex_links(t);
        t.edge_orbit_degrees(); // edge cycles close up
        cusp_assignment(t, links);
        int cusp_count = links.ideal_count();
        report << path << ": " << t.num_tetrahedra() << " tetrahedra, " << cusp_count
               << (cusp_count == 1 ? " cusp" : " cusps");
        for (const auto& orbit : links.orbits)
            if (orbit.ideal)
                report << " (" << orbit.surface << ")";
        report << ", " << t.num_edge_orbits() << " edge orbits, H1 = "
               << t.first_homology().to_string() << "\n";
    } else {
        MarkedMap mm = parse_marked_map_text(text);
        ValidationReport validation = validate(mm);
        if (!validation.ok())
            throw ValidationError(path + ":\n" + validation.summary());
        MappingTorus mt = build_mapping_torus(mm);
        verify_fold_sequence(mt.sequence, mm);
        AbelianGroup h1 = mt.triangulation.first_homology();
        AbelianGroup oracle = mapping_torus_h1_oracle(mm);
        if (!(h1 == oracle))
            throw ValidationError(path + ": homology cross-check failed: " + h1.to_string() +
                                  " vs " + oracle.to_string());
        AbelianGroup quotient = quotient_h1(mt.complex);
        if (!(quotient == oracle))
            throw ValidationError(path + ": quotient homology check failed");
        report << path << ": " << mt.triangulation.num_tetrahedra()
               << " tetrahedra, 1 torus cusp, H1 = " << h1.to_string() << "\n";
    }
    log << report.str();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangulations of mapping tori of once-punctured-surface homeomorphisms"};
    app.require_subcommand(1);

    std::string input, output = "-", name;
    std::vector<std::string> inputs;
    int jobs = 0;
    if (const char* env = std::getenv("MTORUS_JOBS"))
        jobs = std::atoi(env);

    auto* cmd_decompose = app.add_subcommand("decompose", "print the subdivision/fold trace");
    cmd_decompose->add_option("input", input)->required();
    cmd_decompose->add_option("-o,--output", output);

    auto* cmd_triangulate =
        app.add_subcommand("triangulate", "marked map -> T/G gluing file");
    cmd_triangulate->add_option("input", input)->required();
    cmd_triangulate->add_option("-o,--output", output);

    auto* cmd_convert = app.add_subcommand("convert", "T/G file -> SnapPea triangulation file");
    cmd_convert->add_option("input", input)->required();
    cmd_convert->add_option("-o,--output", output);
    cmd_convert->add_option("-n,--name", name, "manifold name");

    auto* cmd_verify = app.add_subcommand("verify", "run all invariant checks on inputs");
    cmd_verify->add_option("inputs", inputs)->required();
    cmd_verify->add_option("-j,--jobs", jobs, "parallel files");

    auto* cmd_group = app.add_subcommand("group", "fundamental group of the mapping torus");
    cmd_group->add_option("input", input)->required();
    cmd_group->add_option("-o,--output", output);

    auto* cmd_info = app.add_subcommand("info", "counts, bound check, fold statistics");
    cmd_info->add_option("inputs", inputs)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_decompose->parsed()) {
            MarkedMap mm = parse_marked_map_text(read_input(input));
            FoldSequence seq = decompose(mm);
            write_output(output, fold_sequence_trace(seq));
        } else if (cmd_triangulate->parsed()) {
            MarkedMap mm = parse_marked_map_text(read_input(input));
            MappingTorus mt = build_mapping_torus(mm);
            std::ostringstream header;
            header << "// " << mt.triangulation.num_tetrahedra() << " tetrahedra\n";
            write_output(output, header.str() + emit_tg(mt.triangulation));
        } else if (cmd_convert->parsed()) {
            Triangulation3 t = realize(parse_tg_text(read_input(input)));
            if (name.empty()) {
                name = input == "-" ? "stdin" : std::filesystem::path(input).stem().string();
            }
            write_output(output, write_snappea(t, name));
        } else if (cmd_verify->parsed()) {
            if (jobs <= 1 || inputs.size() <= 1) {
                for (const std::string& path : inputs)
                    verify_one(path, std::cout);
            } else {
                std::vector<std::future<std::string>> results;
                for (const std::string& path : inputs)
                    results.push_back(std::async(std::launch::async, [path] {
                        std::ostringstream log;
                        verify_one(path, log);
                        return log.str();
                    }));
                for (auto& r : results)
                    std::cout << r.get();
            }
        } else if (cmd_group->parsed()) {
            MarkedMap mm = parse_marked_map_text(read_input(input));
            Presentation hnn = pi1_presentation(mm);
            Presentation simplified = tietze_simplify(hnn);
            std::ostringstream out;
            out << "pi_1(M) = " << hnn.to_string() << "\n";
            out << "simplified: " << simplified.to_string() << "\n";
            out << "H_1(M) = " << abelianization(hnn).to_string() << "\n";
            write_output(output, out.str());
        } else if (cmd_info->parsed()) {
            for (const std::string& path : inputs) {
                MarkedMap mm = parse_marked_map_text(read_input(path));
                MappingTorus mt = build_mapping_torus(mm);
                std::cout << path << ": genus " << genus(mm.graph()) << ", size "
                          << map_size(mm.map) << "\n"
                          << mt.diagnostics.summary();
            }
        }
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
