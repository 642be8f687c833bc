#include "effortwave/body_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "default_body_model_data.hpp"
#include "effortwave/error.hpp"
#include "io_util.hpp"

namespace effortwave {

namespace {

using nlohmann::json;

constexpr double kMassSumTolerance = 1e-9;

[[noreturn]] void invalid(const std::string& what) {
    throw Error(ErrorKind::Validation, "body model: " + what);
}

[[noreturn]] void schema(const std::string& what) {
    throw Error(ErrorKind::Schema, "body model: " + what);
}

std::vector<std::string> name_list(const json& obj, const char* key, const std::string& where,
                                   bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) schema(where + ": missing field '" + key + "'");
        return {};
    }
    if (!it->is_array()) schema(where + ": field '" + key + "' must be an array of names");
    std::vector<std::string> names;
    for (const auto& v : *it) {
        if (!v.is_string()) schema(where + ": field '" + key + "' must hold strings");
        names.push_back(v.get<std::string>());
    }
    return names;
}

double number(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        schema(where + ": missing numeric field '" + key + "'");
    }
    return it->get<double>();
}

json names_to_json(const std::vector<std::string>& names) {
    json arr = json::array();
    for (const auto& n : names) arr.push_back(n);
    return arr;
}

bool all_present(const LandmarkFrame& frame, const std::vector<std::string>& names) {
    return std::all_of(names.begin(), names.end(),
                       [&](const std::string& n) { return frame.has(n); });
}

Vec3 mean_of(const LandmarkFrame& frame, const std::vector<std::string>& names) {
    if (names.size() == 1) return frame.positions.at(names.front());
    Vec3 sum = Vec3::Zero();
    for (const auto& n : names) sum += frame.positions.at(n);
    return sum / static_cast<double>(names.size());
}

Vec3 resolve(const LandmarkFrame& frame, const LandmarkPoint& point, std::size_t frame_index,
             const std::string& segment) {
    if (all_present(frame, point.average_of)) return mean_of(frame, point.average_of);
    if (!point.fallback.empty() && all_present(frame, point.fallback)) {
        return mean_of(frame, point.fallback);
    }
    for (const auto& n : point.average_of) {
        if (!frame.has(n)) {
            throw Error(ErrorKind::Schema, "frame " + std::to_string(frame_index) +
                                               ": missing landmark '" + n + "' for segment " +
                                               segment);
        }
    }
    throw Error(ErrorKind::Schema, "frame " + std::to_string(frame_index) +
                                       ": cannot resolve endpoint of segment " + segment);
}

}  // namespace

BodyModel::BodyModel(std::vector<SegmentDef> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) invalid("no segments");

    double mass_sum = 0.0;
    std::set<std::string> names;
    for (const auto& s : segments_) {
        if (s.name.empty()) invalid("segment with empty name");
        if (!names.insert(s.name).second) invalid("duplicate segment '" + s.name + "'");
        if (!(s.mass_ratio > 0.0 && s.mass_ratio <= 1.0)) {
            invalid("segment " + s.name + ": mass_ratio must lie in (0, 1]");
        }
        if (!(s.cog_ratio >= 0.0 && s.cog_ratio <= 1.0)) {
            invalid("segment " + s.name + ": cog_ratio must lie in [0, 1]");
        }
        if (s.proximal.average_of.empty() || s.distal.average_of.empty()) {
            invalid("segment " + s.name + ": endpoints need at least one landmark");
        }
        mass_sum += s.mass_ratio;
    }
    if (std::abs(mass_sum - 1.0) > kMassSumTolerance) {
        invalid("mass ratios sum to " + detail::format_double(mass_sum) + ", expected 1");
    }

    const std::size_t n = segments_.size();
    parents_.assign(n, std::nullopt);
    children_.assign(n, {});
    std::optional<std::size_t> root;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = segments_[i];
        if (s.parent.empty()) {
            if (root) invalid("more than one root (" + segments_[*root].name + ", " + s.name + ")");
            root = i;
            continue;
        }
        auto p = find(s.parent);
        if (!p) invalid("segment " + s.name + ": unknown parent '" + s.parent + "'");
        if (*p == i) invalid("segment " + s.name + " is its own parent");
        parents_[i] = *p;
    }
    if (!root) invalid("no root segment");
    root_ = *root;
    for (std::size_t i = 0; i < n; ++i) {
        if (parents_[i]) children_[*parents_[i]].push_back(i);
    }

    // Breadth-first from the root; reversed, every child precedes its parent.
    std::vector<std::size_t> order{root_};
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (auto c : children_[order[k]]) order.push_back(c);
    }
    if (order.size() != n) invalid("joint graph is not a tree: some segments are unreachable from the root");
    leaves_to_root_.assign(order.rbegin(), order.rend());
}

std::optional<std::size_t> BodyModel::find(std::string_view name) const {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (segments_[i].name == name) return i;
    }
    return std::nullopt;
}

std::string BodyModel::joint_name(std::size_t i) const {
    const auto& p = parents_.at(i);
    return (p ? segments_[*p].name : std::string("ground")) + "-" + segments_[i].name;
}

double BodyModel::subtree_mass_ratio(std::size_t i) const {
    double sum = segments_.at(i).mass_ratio;
    for (auto c : children_[i]) sum += subtree_mass_ratio(c);
    return sum;
}

std::vector<std::string> BodyModel::required_landmarks() const {
    std::set<std::string> names;
    for (const auto& s : segments_) {
        for (const LandmarkPoint* p : {&s.proximal, &s.distal}) {
            const auto& use = p->fallback.empty() ? p->average_of : p->fallback;
            names.insert(use.begin(), use.end());
        }
    }
    return {names.begin(), names.end()};
}

BodyModel parse_body_model_text(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("body model: ") + e.what());
    }
    if (!root.is_object()) schema("top level is not an object");
    if (auto v = root.find("version"); v == root.end() || !v->is_number_integer() || v->get<int>() != 1) {
        schema("unsupported or missing 'version' (expected 1)");
    }
    auto segs = root.find("segments");
    if (segs == root.end() || !segs->is_array()) schema("missing array 'segments'");

    std::vector<SegmentDef> defs;
    for (std::size_t i = 0; i < segs->size(); ++i) {
        const json& js = (*segs)[i];
        const std::string where = "segment " + std::to_string(i);
        if (!js.is_object()) schema(where + " is not an object");
        SegmentDef def;
        auto name = js.find("name");
        if (name == js.end() || !name->is_string()) schema(where + ": missing string 'name'");
        def.name = name->get<std::string>();
        if (auto p = js.find("parent"); p != js.end() && !p->is_null()) {
            if (!p->is_string()) schema(where + ": 'parent' must be a string or null");
            def.parent = p->get<std::string>();
        }
        def.mass_ratio = number(js, "mass_ratio", where);
        def.cog_ratio = number(js, "cog_ratio", where);
        def.proximal = {name_list(js, "proximal", where, true),
                        name_list(js, "proximal_fallback", where, false)};
        def.distal = {name_list(js, "distal", where, true),
                      name_list(js, "distal_fallback", where, false)};
        defs.push_back(std::move(def));
    }
    return BodyModel(std::move(defs));
}

BodyModel load_body_model(const std::filesystem::path& path) {
    return parse_body_model_text(detail::read_text_file(path));
}

std::string serialize_body_model(const BodyModel& model) {
    nlohmann::ordered_json root;
    root["version"] = 1;
    root["segments"] = nlohmann::ordered_json::array();
    for (const auto& s : model.segments()) {
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["parent"] = s.parent.empty() ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(s.parent);
        js["mass_ratio"] = s.mass_ratio;
        js["proximal"] = names_to_json(s.proximal.average_of);
        if (!s.proximal.fallback.empty()) js["proximal_fallback"] = names_to_json(s.proximal.fallback);
        js["distal"] = names_to_json(s.distal.average_of);
        if (!s.distal.fallback.empty()) js["distal_fallback"] = names_to_json(s.distal.fallback);
        js["cog_ratio"] = s.cog_ratio;
        root["segments"].push_back(std::move(js));
    }
    return root.dump(2) + "\n";
}

const BodyModel& default_body_model() {
    static const BodyModel model = parse_body_model_text(detail::kDefaultBodyModelJson);
    return model;
}

SegmentCogTrace compute_cog_positions(const LandmarkTrace& trace, const BodyModel& model) {
    const LandmarkTrace metric = to_metric_y_up(trace);
    SegmentCogTrace out;
    out.times = metric.timestamps();
    out.positions.assign(model.size(), Vec3Series(metric.size()));
    for (std::size_t f = 0; f < metric.size(); ++f) {
        const LandmarkFrame& frame = metric.frames[f];
        for (std::size_t s = 0; s < model.size(); ++s) {
            const SegmentDef& seg = model.segment(s);
            const Vec3 prox = resolve(frame, seg.proximal, f, seg.name);
            const Vec3 dist = resolve(frame, seg.distal, f, seg.name);
            out.positions[s][f] = prox + seg.cog_ratio * (dist - prox);
        }
    }
    return out;
}

Vec3Series whole_body_com(const SegmentCogTrace& cogs, const BodyModel& model) {
    if (cogs.positions.size() != model.size()) {
        throw Error(ErrorKind::Validation, "CoG trace does not match the body model");
    }
    Vec3Series com(cogs.frame_count(), Vec3::Zero());
    for (std::size_t s = 0; s < model.size(); ++s) {
        const double w = model.segment(s).mass_ratio;
        for (std::size_t f = 0; f < com.size(); ++f) com[f] += w * cogs.positions[s][f];
    }
    return com;
}

}  // namespace effortwave
