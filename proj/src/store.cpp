#include "kgalab/store.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "kgalab/hexutil.hpp"

namespace kga {

std::string document_id(std::span<const std::uint8_t> plaintext) {
    return hex_encode(sha256(plaintext)).substr(0, 16);
}

Json DocumentRecord::to_json() const {
    Json body;
    body["doc_id"] = doc_id;
    body["ciphertext_hex"] = hex_encode(ciphertext);
    body["positions"] = positions;
    return body;
}

DocumentRecord DocumentRecord::from_json(const Json& body) {
    DocumentRecord r;
    r.doc_id = body.at("doc_id").get<std::string>();
    r.ciphertext = hex_decode(body.at("ciphertext_hex").get<std::string>());
    r.positions = body.at("positions").get<std::vector<std::size_t>>();
    return r;
}

std::pair<std::vector<DocumentRecord>, EncryptedIndex> ingest(
    const PublicParams& params, const KeywordUniverse& universe,
    const std::vector<AnnotatedDoc>& docs, const OwnerKeyMaterial& owner,
    const UserPublicKey& user_pub, const std::array<std::uint8_t, 32>& doc_key,
    RandomSource& rng, const std::optional<Scalar>& alpha) {
    std::vector<DocumentRecord> records;
    std::map<std::string, std::vector<std::string>> postings;  // keyword -> doc ids
    for (const auto& doc : docs) {
        std::string id = document_id(doc.plaintext);
        std::vector<std::size_t> positions;
        for (const auto& kw : doc.keywords) {
            positions.push_back(universe.position_of(kw));  // throws on unknown keyword
            postings[kw].push_back(id);
        }
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
        // identical plaintext re-ingested: keep one record, merge annotations
        auto existing = std::find_if(records.begin(), records.end(),
                                     [&](const DocumentRecord& r) { return r.doc_id == id; });
        if (existing != records.end()) {
            existing->positions.insert(existing->positions.end(), positions.begin(), positions.end());
            std::sort(existing->positions.begin(), existing->positions.end());
            existing->positions.erase(
                std::unique(existing->positions.begin(), existing->positions.end()),
                existing->positions.end());
            continue;
        }
        DocumentRecord rec;
        rec.doc_id = id;
        rec.positions = std::move(positions);
        rec.ciphertext = encrypt_document(doc_key, doc.plaintext, rng);
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const DocumentRecord& a, const DocumentRecord& b) { return a.doc_id < b.doc_id; });

    std::vector<KeywordPosting> keyword_postings;
    for (auto& [kw, ids] : postings) keyword_postings.push_back({kw, std::move(ids)});

    EncryptedIndex index =
        alpha ? h_index_gen(params, universe, keyword_postings, owner, user_pub, *alpha)
              : index_gen(params, universe, keyword_postings, owner, user_pub,
                          RPolicy::owner_shared, rng);
    return {std::move(records), std::move(index)};
}

std::vector<std::vector<std::uint8_t>> retrieve(const MatchResult& match,
                                                const std::array<std::uint8_t, 32>& doc_key,
                                                const std::vector<DocumentRecord>& records) {
    std::vector<const DocumentRecord*> hits;
    for (const auto& id : match.doc_ids) {
        auto it = std::find_if(records.begin(), records.end(),
                               [&](const DocumentRecord& r) { return r.doc_id == id; });
        if (it == records.end()) throw Error("retrieve: no record for doc id " + id);
        hits.push_back(&*it);
    }
    std::sort(hits.begin(), hits.end(),
              [](const DocumentRecord* a, const DocumentRecord* b) { return a->doc_id < b->doc_id; });
    std::vector<std::vector<std::uint8_t>> plaintexts;
    for (const DocumentRecord* r : hits) plaintexts.push_back(decrypt_document(doc_key, r->ciphertext));
    return plaintexts;
}

CloudDirectory::CloudDirectory(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_ / "public");
    std::filesystem::create_directories(root_ / "private");
}

std::filesystem::path CloudDirectory::public_path(const std::string& name) const {
    return root_ / "public" / name;
}

std::filesystem::path CloudDirectory::private_path(const std::string& role,
                                                   const std::string& name) const {
    return root_ / "private" / role / name;
}

void CloudDirectory::write_public(const std::string& name, const std::string& schema,
                                  const std::string& type, Json body) {
    store_envelope(public_path(name), make_envelope(schema, type, /*secret=*/false, std::move(body)));
}

void CloudDirectory::write_private(const std::string& role, const std::string& name,
                                   const std::string& schema, const std::string& type, Json body,
                                   bool secret) {
    std::filesystem::create_directories(root_ / "private" / role);
    store_envelope(private_path(role, name), make_envelope(schema, type, secret, std::move(body)));
}

Json CloudDirectory::read_public(const std::string& name, const std::string& expected_type,
                                 Role role) const {
    return load_envelope(public_path(name), expected_type, role);
}

Json CloudDirectory::read_private(const std::string& role, const std::string& name,
                                  const std::string& expected_type) const {
    return load_envelope(private_path(role, name), expected_type, Role::trusted);
}

std::vector<std::string> CloudDirectory::secret_files_in_public() const {
    std::vector<std::string> offenders;
    for (const auto& entry : std::filesystem::directory_iterator(root_ / "public")) {
        if (!entry.is_regular_file()) continue;
        Json env = load_envelope_any(entry.path(), Role::trusted);
        if (env["secret"].get<bool>()) offenders.push_back(entry.path().filename().string());
    }
    return offenders;
}

std::vector<AnnotatedDoc> load_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw Error("cannot open manifest " + manifest.string());
    Json list;
    try {
        list = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(manifest.string() + ": not valid JSON: " + e.what());
    }
    if (!list.is_array()) throw SchemaError("manifest must be a JSON array");
    std::vector<AnnotatedDoc> docs;
    for (const auto& item : list) {
        AnnotatedDoc doc;
        std::filesystem::path p = item.at("path").get<std::string>();
        if (p.is_relative()) p = manifest.parent_path() / p;
        std::ifstream f(p, std::ios::binary);
        if (!f) throw Error("cannot open document " + p.string());
        doc.plaintext.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
        doc.keywords = item.at("keywords").get<std::vector<std::string>>();
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace kga
