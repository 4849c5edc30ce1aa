#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgalab/envelope.hpp"

namespace kga {

// The multi-owner keyword-search scheme as originally published, flaws included:
// the document key rides in the public parameters in vulnerable mode, the
// keyword components C1/T1 are unblinded, and the owner randomness r_i is a
// caller-visible policy knob.

struct DegenerateInputError : Error {
    using Error::Error;
};

enum class ParamsMode { vulnerable, hardened };

struct PublicParams {
    std::string curve_id = "bls12-381";
    HashSpec hash;
    ParamsMode mode = ParamsMode::vulnerable;
    std::optional<std::array<std::uint8_t, 32>> doc_key;  // present only in vulnerable mode
    bool transcripts = false;                             // test-only oracle switch

    GroupElement generator() const { return GroupElement::generator(transcripts); }

    Json to_json() const;
    static PublicParams from_json(const Json& body);
};

// Global positional dictionary: every per-position secret x_{i,t} / y_{j,l}
// refers to positions of this shared universe.
class KeywordUniverse {
  public:
    KeywordUniverse() = default;
    explicit KeywordUniverse(std::vector<std::string> words);

    std::size_t size() const { return words_.size(); }
    // 1-based position
    std::size_t position_of(const std::string& word) const;  // throws on unknown keyword
    const std::string& word_at(std::size_t pos) const;
    const std::vector<std::string>& words() const { return words_; }
    bool contains(const std::string& word) const { return index_.count(word) != 0; }

    Json to_json() const;
    static KeywordUniverse from_json(const Json& body);

  private:
    std::vector<std::string> words_;
    std::map<std::string, std::size_t> index_;
};

struct OwnerKeyMaterial {
    std::string id;
    std::vector<Scalar> x;          // secret, one per universe position
    std::vector<GroupElement> pk;   // g^{x_t}
    Scalar r;                       // per-owner random value

    Json secret_json() const;
    Json public_json() const;
    static OwnerKeyMaterial from_secret_json(const Json& body, const PublicParams& params);
};

struct UserKeyMaterial {
    std::string id;
    std::vector<Scalar> y;
    std::vector<GroupElement> pk;  // g^{y_l}

    Json secret_json() const;
    Json public_json() const;
    static UserKeyMaterial from_secret_json(const Json& body, const PublicParams& params);
};

// Public halves, as parsed from .pk.json files.
struct OwnerPublicKey {
    std::string id;
    std::vector<GroupElement> pk;
    static OwnerPublicKey from_json(const Json& body);
};

struct UserPublicKey {
    std::string id;
    std::vector<GroupElement> pk;
    static UserPublicKey from_json(const Json& body);
};

struct IndexEntry {
    std::size_t position;              // universe position h
    GroupElement c1;                   // g^{H(w_h) x_h}        (vulnerable)  /  g^{H(w_h) x_h alpha}  (hardened)
    GroupElement c2;                   // PK_{U,h}^{r}
    std::vector<std::string> doc_ids;  // postings
};

struct EncryptedIndex {
    std::string owner_id;
    std::string user_id;
    std::string schema = SCHEMA_V1;
    std::vector<IndexEntry> entries;

    const IndexEntry* find(std::size_t position) const;

    Json to_json() const;
    static EncryptedIndex from_json(const Json& body);
};

struct TrapdoorEntry {
    std::size_t position;  // universe position h'
    GroupElement t1;       // g^{H(w') y_{h'}}
    GroupElement t2;       // PK_{DO,h'}^{r}
};

struct Trapdoor {
    std::string user_id;
    std::string owner_id;
    std::string schema = SCHEMA_V1;
    std::vector<TrapdoorEntry> entries;

    Json to_json() const;
    static Trapdoor from_json(const Json& body);
};

struct PositionMatch {
    std::size_t position;
    bool matched;
};

struct MatchResult {
    std::vector<PositionMatch> per_position;
    bool overall = false;
    std::vector<std::string> doc_ids;  // intersection of matched postings, sorted

    Json to_json() const;
};

enum class RPolicy { owner_shared, fresh };

struct KeywordPosting {
    std::string keyword;
    std::vector<std::string> doc_ids;
};

PublicParams setup(int security_level, ParamsMode mode, RandomSource& rng, bool transcripts = false);

OwnerKeyMaterial keygen_owner(const PublicParams& params, const KeywordUniverse& universe,
                              RandomSource& rng, const std::string& id = "owner");

UserKeyMaterial keygen_user(const PublicParams& params, std::size_t q, RandomSource& rng,
                            const std::string& id = "user");

EncryptedIndex index_gen(const PublicParams& params, const KeywordUniverse& universe,
                         const std::vector<KeywordPosting>& postings, const OwnerKeyMaterial& owner,
                         const UserPublicKey& user_pub, RPolicy r_policy, RandomSource& rng);

Trapdoor trapdoor_gen(const PublicParams& params, const KeywordUniverse& universe,
                      const std::vector<std::string>& query, const UserKeyMaterial& user,
                      const OwnerPublicKey& owner_pub, const Scalar& r);

MatchResult search(const EncryptedIndex& index, const Trapdoor& trapdoor);

// Same decision evaluated as the printed ratio: e(C1,C2)/e(T1,T2) == 1_GT.
MatchResult search_ratio(const EncryptedIndex& index, const Trapdoor& trapdoor);

// Authenticated symmetric encryption for documents (XChaCha20-Poly1305,
// nonce prefixed to the ciphertext).
std::vector<std::uint8_t> encrypt_document(const std::array<std::uint8_t, 32>& key,
                                           std::span<const std::uint8_t> plaintext, RandomSource& rng);
std::vector<std::uint8_t> decrypt_document(const std::array<std::uint8_t, 32>& key,
                                           std::span<const std::uint8_t> ciphertext);

}  // namespace kga
