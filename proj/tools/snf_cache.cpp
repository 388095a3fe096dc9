#include "snf_cache.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace twahss::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string matrix_text(const IntMatrix& M)
{
    std::ostringstream os;
    os << M.rows() << ' ' << M.cols();
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            os << ' ' << M(i, j).str();
    return os.str();
}

namespace {

json to_j(const IntMatrix& M)
{
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(M(i, j).str());
        rows.push_back(r);
    }
    return json{{"rows", M.rows()}, {"cols", M.cols()}, {"entries", rows}};
}

IntMatrix from_j(const json& j)
{
    IntMatrix M(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const json& e = j.at("entries");
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j2 = 0; j2 < M.cols(); ++j2)
            M(i, j2) = Integer(e.at(i).at(j2).get<std::string>());
    return M;
}

}  // namespace

FileSnfStore::FileSnfStore(fs::path dir) : dir_(std::move(dir))
{
    fs::create_directories(dir_);
}

fs::path FileSnfStore::path_for(const std::string& key) const { return dir_ / ("snf-" + key + ".json"); }

namespace {

// D diagonal with d_1 | d_2 | ... | d_rank > 0 and zeros after
bool smith_shape(const SmithResult& r)
{
    for (std::size_t i = 0; i < r.D.rows(); ++i)
        for (std::size_t j = 0; j < r.D.cols(); ++j)
            if (i != j && r.D(i, j) != 0)
                return false;
    const std::size_t n = std::min(r.D.rows(), r.D.cols());
    if (r.rank > n)
        return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < r.rank && (r.diag(i) <= 0 || (i + 1 < r.rank && r.diag(i + 1) % r.diag(i) != 0)))
            return false;
        if (i >= r.rank && r.diag(i) != 0)
            return false;
    }
    return true;
}

}  // namespace

std::optional<SmithResult> FileSnfStore::load(const IntMatrix& M)
{
    const std::string text = matrix_text(M);
    fs::path p = path_for(sha256_hex(text));
    std::ifstream in(p);
    if (!in)
        return std::nullopt;
    try {
        json j = json::parse(in);
        if (j.at("schema").get<int>() != 1 || j.at("matrix").get<std::string>() != text)
            return std::nullopt;
        SmithResult r;
        r.U = from_j(j.at("U"));
        r.D = from_j(j.at("D"));
        r.V = from_j(j.at("V"));
        r.U_inv = from_j(j.at("U_inv"));
        r.V_inv = from_j(j.at("V_inv"));
        r.rank = j.at("rank").get<std::size_t>();
        // a damaged entry that still parses is treated as a miss
        if (r.U.rows() != M.rows() || r.U.cols() != M.rows() || r.V.rows() != M.cols() ||
            r.V.cols() != M.cols() || r.D.rows() != M.rows() || r.D.cols() != M.cols() ||
            r.U_inv.rows() != M.rows() || r.V_inv.rows() != M.cols() || !(r.U * r.D * r.V == M) ||
            !(r.U * r.U_inv == IntMatrix::identity(M.rows())) || !(r.V * r.V_inv == IntMatrix::identity(M.cols())))
            return std::nullopt;
        if (!smith_shape(r))
            return std::nullopt;
        ++hits_;
        return r;
    } catch (const std::exception&) {
        // unreadable entries are recomputed and overwritten
        return std::nullopt;
    }
}

void FileSnfStore::save(const IntMatrix& M, const SmithResult& r)
{
    const std::string text = matrix_text(M);
    const std::string key = sha256_hex(text);
    json j{{"schema", 1},       {"matrix", text},       {"U", to_j(r.U)},         {"D", to_j(r.D)},
           {"V", to_j(r.V)},     {"U_inv", to_j(r.U_inv)}, {"V_inv", to_j(r.V_inv)}, {"rank", r.rank}};
    fs::path tmp = dir_ / (".tmp-" + key + "-" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        out << j.dump();
        if (!out)
            throw std::runtime_error("cannot write SNF cache entry " + tmp.string());
    }
    fs::rename(tmp, path_for(key));
    ++writes_;
}

}  // namespace twahss::cli
