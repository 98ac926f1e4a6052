#include "manifest.hpp"

#include "murphyes/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace murphyes::cli {

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

RunManifest::RunManifest(std::string command, std::filesystem::path out_dir)
    : command_(std::move(command)), out_dir_(std::move(out_dir)) {}

void RunManifest::add_input(const std::filesystem::path& path, std::string_view contents) {
    inputs_.push_back({{"path", path.string()}, {"sha256", sha256_hex(contents)}});
}

void RunManifest::write_artifact(const std::string& name, std::string_view contents) {
    io::write_text(out_dir_ / name, contents);
    artifacts_.push_back(name);
}

std::filesystem::path RunManifest::write() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["config"] = config;
    j["inputs"] = inputs_;
    j["seed"] = seed;
    j["artifacts"] = artifacts_;
    const auto path = out_dir_ / "manifest.json";
    io::write_text(path, j.dump(2) + "\n");
    return path;
}

} // namespace murphyes::cli
