#include "axisym/run_record.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace axisym {

std::string content_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("content_hash: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

void RunRecord::write_manifest() const {
    nlohmann::json j;
    j["format"] = "axisymlab-run/1";
    j["config"] = config.echo();
    j["status"] = complete ? "complete" : "incomplete";
    j["under_resolved"] = under_resolved;
    j["steps"] = steps;
    j["t_final"] = t_final;
    auto file_entry = [&](const std::string& rel) {
        nlohmann::json e;
        e["file"] = rel;
        e["fnv1a64"] = content_hash_hex(dir + "/" + rel);
        return e;
    };
    j["files"] = nlohmann::json::array();
    if (!diagnostics_csv.empty()) j["files"].push_back(file_entry(diagnostics_csv));
    if (!profiles_csv.empty()) j["files"].push_back(file_entry(profiles_csv));
    if (!particles_csv.empty()) j["files"].push_back(file_entry(particles_csv));
    for (const std::string& s : snapshot_files) j["files"].push_back(file_entry(s));

    std::ofstream out(dir + "/manifest.json", std::ios::trunc);
    if (!out) throw IoError("write_manifest: cannot open " + dir + "/manifest.json");
    out << j.dump(2) << "\n";
}

RunRecord load_run_record(const std::string& dir) {
    std::ifstream in(dir + "/manifest.json");
    if (!in) throw IoError("load_run_record: cannot open " + dir + "/manifest.json");
    nlohmann::json j;
    in >> j;
    RunRecord rec;
    rec.dir = dir;
    rec.config = parse_config_text(j.at("config").get<std::string>());
    rec.complete = j.at("status").get<std::string>() == "complete";
    rec.under_resolved = j.value("under_resolved", false);
    rec.steps = j.value("steps", 0);
    rec.t_final = j.value("t_final", 0.0);
    for (const auto& e : j.at("files")) {
        const std::string f = e.at("file").get<std::string>();
        const std::string expect = e.at("fnv1a64").get<std::string>();
        const std::string got = content_hash_hex(dir + "/" + f);
        if (got != expect)
            throw IoError("load_run_record: hash mismatch for " + f + " (manifest " + expect +
                          ", file " + got + ")");
        if (f.find("snap_") == 0) rec.snapshot_files.push_back(f);
        else if (f == "diagnostics.csv") rec.diagnostics_csv = f;
        else if (f == "profiles.csv") rec.profiles_csv = f;
        else if (f == "particles.csv") rec.particles_csv = f;
    }
    return rec;
}

} // namespace axisym
