#pragma once

#include "kgalab/hardened.hpp"
#include "kgalab/prmkr.hpp"

namespace kga {

// Encrypted document store: plaintexts with keyword annotations go in,
// authenticated ciphertexts plus an encrypted index come out. Doc ids are
// content hashes so re-ingestion is idempotent and tests are deterministic.

struct AnnotatedDoc {
    std::vector<std::uint8_t> plaintext;
    std::vector<std::string> keywords;
};

struct DocumentRecord {
    std::string doc_id;  // sha256(plaintext), truncated to 16 hex chars
    std::vector<std::uint8_t> ciphertext;
    std::vector<std::size_t> positions;  // universe positions referencing this doc

    Json to_json() const;
    static DocumentRecord from_json(const Json& body);
};

std::string document_id(std::span<const std::uint8_t> plaintext);

// Encrypts each document under doc_key and builds the index over the
// annotations. With alpha set, the hardened index_gen is used (hardened
// schema); otherwise the baseline scheme with the owner's shared r.
std::pair<std::vector<DocumentRecord>, EncryptedIndex> ingest(
    const PublicParams& params, const KeywordUniverse& universe,
    const std::vector<AnnotatedDoc>& docs, const OwnerKeyMaterial& owner,
    const UserPublicKey& user_pub, const std::array<std::uint8_t, 32>& doc_key,
    RandomSource& rng, const std::optional<Scalar>& alpha = std::nullopt);

// Decrypts the records matched by a search, ordered by doc id.
std::vector<std::vector<std::uint8_t>> retrieve(const MatchResult& match,
                                                const std::array<std::uint8_t, 32>& doc_key,
                                                const std::vector<DocumentRecord>& records);

// On-disk layout for one lab instance:
//   <root>/public/         params, public keys, indexes, trapdoors, ciphertexts
//   <root>/private/<role>/ secret keys, credentials, master secret
// Everything is an envelope file; public writes are forced to "secret":false
// and the attacker role reads public/ only.
class CloudDirectory {
  public:
    explicit CloudDirectory(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path public_path(const std::string& name) const;
    std::filesystem::path private_path(const std::string& role, const std::string& name) const;

    void write_public(const std::string& name, const std::string& schema, const std::string& type,
                      Json body);  // throws if asked to write a secret publicly
    void write_private(const std::string& role, const std::string& name, const std::string& schema,
                       const std::string& type, Json body, bool secret = true);

    Json read_public(const std::string& name, const std::string& expected_type,
                     Role role = Role::trusted) const;
    Json read_private(const std::string& role, const std::string& name,
                      const std::string& expected_type) const;

    // Hygiene scan: every file under public/ must carry "secret":false.
    std::vector<std::string> secret_files_in_public() const;

  private:
    std::filesystem::path root_;
};

// Reads a manifest [{"path": ..., "keywords": [...]}, ...]; paths are
// resolved relative to the manifest file.
std::vector<AnnotatedDoc> load_manifest(const std::filesystem::path& manifest);

}  // namespace kga
