#include "batchcover/json_io.hpp"

#include <fstream>

namespace batchcover {

namespace {

int parse_full_int(const std::string& text) {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw InvalidArguments("trailing characters");
    return value;
}

Element element_from_json(const nlohmann::json& je) {
    Element e;
    const std::string id = je.at("id").get<std::string>();
    const auto dot = id.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == id.size()) {
        throw InvalidArguments("instance json: element id '" + id + "' is not of the form k.q");
    }
    try {
        e.batch_index = parse_full_int(id.substr(0, dot));
        e.position = parse_full_int(id.substr(dot + 1));
    } catch (const std::exception&) {
        throw InvalidArguments("instance json: element id '" + id + "' is not of the form k.q");
    }
    for (const auto& jj : je.at("member_of")) {
        e.member_of.push_back(jj.get<int>() - 1);  // 1-based on disk
    }
    return e;
}

}  // namespace

nlohmann::ordered_json instance_to_json(const Instance& inst) {
    nlohmann::ordered_json j;
    j["num_sets"] = inst.system.num_sets;
    j["costs"] = inst.system.costs;
    nlohmann::ordered_json batches = nlohmann::ordered_json::array();
    for (const Batch& batch : inst.batches) {
        nlohmann::ordered_json jbatch = nlohmann::ordered_json::array();
        for (const Element& e : batch.elements) {
            nlohmann::ordered_json je;
            je["id"] = e.id();
            std::vector<int> external(e.member_of.size());
            for (std::size_t i = 0; i < e.member_of.size(); ++i) external[i] = e.member_of[i] + 1;
            je["member_of"] = external;
            jbatch.push_back(std::move(je));
        }
        batches.push_back(std::move(jbatch));
    }
    j["batches"] = std::move(batches);
    if (inst.meta) {
        nlohmann::ordered_json jm;
        jm["family"] = inst.meta->family;
        jm["z"] = inst.meta->z;
        jm["m"] = inst.meta->m;
        j["meta"] = std::move(jm);
    }
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    try {
        Instance inst;
        inst.system.num_sets = j.at("num_sets").get<int>();
        inst.system.costs = j.at("costs").get<std::vector<double>>();
        for (const auto& jbatch : j.at("batches")) {
            Batch batch;
            for (const auto& je : jbatch) batch.elements.push_back(element_from_json(je));
            inst.batches.push_back(std::move(batch));
        }
        if (j.contains("meta")) {
            const auto& jm = j.at("meta");
            InstanceMeta meta;
            meta.family = jm.value("family", std::string{});
            meta.z = jm.value("z", 0);
            meta.m = jm.value("m", 0);
            inst.meta = std::move(meta);
        }
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArguments(std::string("instance json: ") + e.what());
    }
}

std::string instance_to_json_string(const Instance& inst) {
    return instance_to_json(inst).dump();
}

Instance instance_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArguments(std::string("instance json: ") + e.what());
    }
    return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << instance_to_json_string(inst) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return instance_from_json_string(text);
}

}  // namespace batchcover
