#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace murphyes::cli {

std::string sha256_hex(std::string_view bytes);

/// Collects artifacts of one command run. write() must be called last; it
/// lists every file written through this object.
class RunManifest {
public:
    RunManifest(std::string command, std::filesystem::path out_dir);

    nlohmann::ordered_json config;
    std::uint64_t seed = 0;

    void add_input(const std::filesystem::path& path, std::string_view contents);
    void write_artifact(const std::string& name, std::string_view contents);
    std::filesystem::path write() const;

private:
    std::string command_;
    std::filesystem::path out_dir_;
    nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
    std::vector<std::string> artifacts_;
};

} // namespace murphyes::cli
