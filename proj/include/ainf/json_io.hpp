#pragma once
// JSON schemas for fixtures and reports, and the CSV format for frame paths.
// Every document carries a schema tag; loaders reject unknown or missing tags.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ainf/ainfty.hpp"
#include "ainf/branes.hpp"
#include "ainf/cubical.hpp"
#include "ainf/pontryagin.hpp"

namespace ainf {

using json = nlohmann::json;

inline void require_schema(const json& j, const std::string& tag) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != tag)
        throw FixtureError("expected schema '" + tag + "'");
}

// ---------------------------------------------------------------------------
// exactalg modules and maps: ainf-module/1

inline json module_to_json(const GradedModule& m, const std::vector<std::pair<std::string, SparseMap>>& maps) {
    json j;
    j["schema"] = "ainf-module/1";
    j["generators"] = json::array();
    for (std::size_t i = 0; i < m.rank(); ++i)
        j["generators"].push_back({{"label", m.gen(i).label}, {"degree", m.gen(i).degree}});
    j["maps"] = json::array();
    for (const auto& [name, f] : maps) {
        json entries = json::object();
        for (std::size_t g = 0; g < f.source()->rank(); ++g) {
            Chain img = f.apply_gen(g);
            if (img.is_zero()) continue;
            json terms = json::array();
            for (const auto& [t, c] : img.terms())
                terms.push_back({f.target()->gen(t).label, c});
            entries[f.source()->gen(g).label] = terms;
        }
        j["maps"].push_back({{"name", name}, {"shift", f.degree_shift()}, {"entries", entries}});
    }
    return j;
}

struct LoadedModule {
    ModulePtr module;
    std::vector<std::pair<std::string, SparseMap>> maps;  // endomorphism maps
};

inline LoadedModule module_from_json(const json& j) {
    require_schema(j, "ainf-module/1");
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators"))
        gens.push_back({g.at("label").get<std::string>(), g.at("degree").get<int>()});
    LoadedModule out;
    out.module = make_module(std::move(gens));
    for (const auto& m : j.value("maps", json::array())) {
        SparseMap f(out.module, out.module, m.at("shift").get<int>());
        for (const auto& [src, terms] : m.at("entries").items()) {
            auto si = out.module->index_of(src);
            if (!si) throw FixtureError("map entry on unknown generator '" + src + "'");
            Chain img(out.module);
            for (const auto& t : terms) {
                auto di = out.module->index_of(t.at(0).get<std::string>());
                if (!di) throw FixtureError("map image on unknown generator");
                img.add_term(*di, t.at(1).get<std::int64_t>());
            }
            f.set_entry(*si, img);
        }
        out.maps.push_back({m.at("name").get<std::string>(), std::move(f)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// presented cubical sets: ainf-cubical/1, faces keyed "k,eps"

inline PresentedCubicalSet cubical_from_json(const json& j) {
    require_schema(j, "ainf-cubical/1");
    PresentedCubicalSet x(j.value("name", "cubical"));
    for (const auto& c : j.at("cubes"))
        x.add_cube(c.at("label").get<std::string>(), c.at("dim").get<int>());
    const json faces_obj = j.value("faces", json::object());
    for (const auto& [label, faces] : faces_obj.items()) {
        for (const auto& [key, face] : faces.items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos) throw FixtureError("face key must be 'k,eps'");
            int k = std::stoi(key.substr(0, comma));
            int eps = std::stoi(key.substr(comma + 1));
            if (face.contains("cube")) {
                x.set_face(label, k, eps, FaceResult::nondegenerate(face.at("cube").get<std::string>()));
            } else if (face.contains("degenerate")) {
                const auto& d = face.at("degenerate");
                x.set_face(label, k, eps,
                           FaceResult::degenerate_on(d.at("of").get<std::string>(), d.at("dir").get<int>()));
            } else {
                throw FixtureError("face must be a cube or a degenerate marker");
            }
        }
    }
    return x;
}

inline json cubical_to_json(const PresentedCubicalSet& x) {
    json j;
    j["schema"] = "ainf-cubical/1";
    j["name"] = x.name();
    j["cubes"] = json::array();
    json faces = json::object();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& c = x.cube(i);
        j["cubes"].push_back({{"label", c.label}, {"dim", c.dim}});
        if (c.dim == 0) continue;
        json per = json::object();
        for (int k = 1; k <= c.dim; ++k)
            for (int eps = 0; eps <= 1; ++eps) {
                const FaceResult& f = x.face(i, k, eps);
                std::string key = std::to_string(k) + "," + std::to_string(eps);
                if (f.is_degenerate())
                    per[key] = {{"degenerate", {{"of", f.degenerate->of}, {"dir", f.degenerate->dir}}}};
                else
                    per[key] = {{"cube", *f.cube}};
            }
        faces[c.label] = per;
    }
    j["faces"] = faces;
    return j;
}

// ---------------------------------------------------------------------------
// digraph fixtures: ainf-digraph/1

inline Digraph digraph_from_json(const json& j) {
    require_schema(j, "ainf-digraph/1");
    Digraph g;
    for (const auto& v : j.at("vertices")) g.vertices.push_back(v.get<std::string>());
    for (const auto& e : j.value("edges", json::array()))
        g.edges.push_back({e.at("id").get<std::string>(), e.at("src").get<std::string>(),
                           e.at("dst").get<std::string>()});
    int sq = 0;
    for (const auto& s : j.value("squares", json::array())) {
        std::string id = s.value("id", "sq" + std::to_string(sq++));
        g.squares.push_back({id,
                             {s.at("top").at(0).get<std::string>(), s.at("top").at(1).get<std::string>()},
                             {s.at("bottom").at(0).get<std::string>(), s.at("bottom").at(1).get<std::string>()}});
    }
    g.validate();
    return g;
}

inline json digraph_to_json(const Digraph& g) {
    json j;
    j["schema"] = "ainf-digraph/1";
    j["vertices"] = g.vertices;
    j["edges"] = json::array();
    for (const auto& e : g.edges) j["edges"].push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
    j["squares"] = json::array();
    for (const auto& s : g.squares)
        j["squares"].push_back({{"id", s.id},
                                {"top", {s.top[0], s.top[1]}},
                                {"bottom", {s.bottom[0], s.bottom[1]}}});
    return j;
}

// ---------------------------------------------------------------------------
// categories and functors: ainf-cat/1, ainf-fun/1. mu/F entries list their
// arguments in the written order (x_d first).

inline json category_to_json(const AInftyCategory& c) {
    json j;
    j["schema"] = "ainf-cat/1";
    j["objects"] = c.objects();
    j["homs"] = json::array();
    for (const auto& [pair, mod] : c.homs()) {
        json gens = json::array();
        for (std::size_t g = 0; g < mod->rank(); ++g)
            gens.push_back({{"label", mod->gen(g).label}, {"degree", mod->gen(g).degree}});
        j["homs"].push_back({{"src", pair.first}, {"dst", pair.second}, {"generators", gens}});
    }
    j["mu"] = json::array();
    for (const auto& [args, image] : c.mu_entries()) {
        json ja = json::array();
        for (const auto& a : args) ja.push_back({{"src", a.src}, {"dst", a.dst}, {"gen", c.label(a)}});
        json out = json::array();
        for (const auto& [t, coeff] : image.terms())
            out.push_back({image.module()->gen(t).label, coeff});
        j["mu"].push_back({{"args", ja}, {"out", out}});
    }
    return j;
}

inline AInftyCategory category_from_json(const json& j) {
    require_schema(j, "ainf-cat/1");
    AInftyCategory c;
    for (const auto& o : j.at("objects")) c.add_object(o.get<std::string>());
    for (const auto& h : j.at("homs")) {
        std::vector<Generator> gens;
        for (const auto& g : h.at("generators"))
            gens.push_back({g.at("label").get<std::string>(), g.at("degree").get<int>()});
        std::string src = h.at("src").get<std::string>(), dst = h.at("dst").get<std::string>();
        c.set_hom(src, dst, make_module(std::move(gens), src + ">" + dst));
    }
    for (const auto& m : j.value("mu", json::array())) {
        std::vector<HomGen> args;
        for (const auto& a : m.at("args")) {
            std::string src = a.at("src").get<std::string>(), dst = a.at("dst").get<std::string>();
            ModulePtr mod = c.hom(src, dst);
            if (!mod) throw FixtureError("mu argument on missing hom " + src + " -> " + dst);
            auto gi = mod->index_of(a.at("gen").get<std::string>());
            if (!gi) throw FixtureError("mu argument on unknown generator");
            args.push_back({src, dst, *gi});
        }
        if (args.empty()) throw FixtureError("mu entry needs arguments");
        ModulePtr target = c.hom(args.back().src, args.front().dst);
        if (!target) throw FixtureError("mu entry with no target hom module");
        Chain image(target);
        for (const auto& t : m.at("out")) {
            auto gi = target->index_of(t.at(0).get<std::string>());
            if (!gi) throw FixtureError("mu image on unknown generator");
            image.add_term(*gi, t.at(1).get<std::int64_t>());
        }
        c.set_mu(args, std::move(image));
    }
    return c;
}

struct LoadedFunctor {
    AInftyCategory source, target;
    AInftyFunctorData functor;
};

inline json functor_to_json(const AInftyFunctorData& f) {
    json j;
    j["schema"] = "ainf-fun/1";
    j["source"] = category_to_json(*f.source);
    j["target"] = category_to_json(*f.target);
    j["object_map"] = f.object_map;
    j["entries"] = json::array();
    for (const auto& [args, image] : f.entries) {
        json ja = json::array();
        for (const auto& a : args) ja.push_back({{"src", a.src}, {"dst", a.dst}, {"gen", f.source->label(a)}});
        json out = json::array();
        for (const auto& [t, coeff] : image.terms())
            out.push_back({image.module()->gen(t).label, coeff});
        j["entries"].push_back({{"args", ja}, {"out", out}});
    }
    return j;
}

inline std::unique_ptr<LoadedFunctor> functor_from_json(const json& j) {
    require_schema(j, "ainf-fun/1");
    auto out = std::make_unique<LoadedFunctor>();
    out->source = category_from_json(j.at("source"));
    out->target = category_from_json(j.at("target"));
    out->functor.source = &out->source;
    out->functor.target = &out->target;
    for (const auto& [k, v] : j.at("object_map").items())
        out->functor.object_map[k] = v.get<std::string>();
    for (const auto& e : j.value("entries", json::array())) {
        std::vector<HomGen> args;
        for (const auto& a : e.at("args")) {
            std::string src = a.at("src").get<std::string>(), dst = a.at("dst").get<std::string>();
            ModulePtr mod = out->source.hom(src, dst);
            if (!mod) throw FixtureError("F argument on missing hom");
            auto gi = mod->index_of(a.at("gen").get<std::string>());
            if (!gi) throw FixtureError("F argument on unknown generator");
            args.push_back({src, dst, *gi});
        }
        if (args.empty()) throw FixtureError("F entry needs arguments");
        ModulePtr target = out->target.hom(out->functor.object_map.at(args.back().src),
                                           out->functor.object_map.at(args.front().dst));
        if (!target) throw FixtureError("F entry with no target hom module");
        Chain image(target);
        for (const auto& t : e.at("out")) {
            auto gi = target->index_of(t.at(0).get<std::string>());
            if (!gi) throw FixtureError("F image on unknown generator");
            image.add_term(*gi, t.at(1).get<std::int64_t>());
        }
        out->functor.set_entry(args, std::move(image));
    }
    return out;
}

// ---------------------------------------------------------------------------
// frame path CSV: one row per sample, 2 n^2 comma-separated reals

inline std::vector<std::vector<double>> frame_rows_from_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

inline void frame_rows_to_csv(const std::vector<std::vector<double>>& rows, std::ostream& out) {
    out << "# frame path: each row holds 2*n^2 reals, row-major Re(basis matrix) then Im\n";
    out.precision(17);
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw FixtureError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw FixtureError("cannot write '" + path + "'");
    out << text;
}

}  // namespace ainf
