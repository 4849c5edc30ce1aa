#pragma once

#include "kgalab/prmkr.hpp"

namespace kga {

// Candidate keyword list for the dictionary-guessing attacks. The attacks
// never assume the true keyword is present.
class Dictionary {
  public:
    Dictionary() = default;
    explicit Dictionary(std::vector<std::string> words);  // throws on duplicates

    std::size_t size() const { return words_.size(); }
    const std::vector<std::string>& words() const { return words_; }

    Json to_json() const;
    static Dictionary from_json(const Json& body);

  private:
    std::vector<std::string> words_;
};

struct Recovery {
    std::size_t position;  // index/trapdoor entry position the hit was found at
    std::string keyword;
};

struct AttackReport {
    std::string attack_id;  // "I" | "II" | "III-case1" | "III-case2" | "IV"
    bool success = false;
    std::vector<Recovery> recoveries;
    std::uint64_t candidates_tested = 0;
    std::uint64_t pairings_evaluated = 0;
    double wall_time_s = 0.0;
    Json details = Json::object();  // attack-specific evidence

    // Timing is excluded from serialization when byte-stable output is needed.
    Json to_json(bool include_timing = true) const;
};

// Guess keywords hidden in an index: for every entry h and candidate w*,
// declare a hit iff  e(C1_h, g) == e(g^{H(w*)}, PK_{DO,h}).  The left side is
// computed once per entry, so the cost is exactly 1 + D pairings per entry.
AttackReport attack_index_kga(const PublicParams& params, const EncryptedIndex& index,
                              const OwnerPublicKey& owner_pub, const Dictionary& dict);

// Same guess against a trapdoor:  e(T1, g) == e(g^{H(w*)}, PK_{U,h'}).
AttackReport attack_trapdoor_kga(const PublicParams& params, const Trapdoor& trapdoor,
                                 const UserPublicKey& user_pub, const Dictionary& dict);

// A user who was handed the owner's r_i forges a trapdoor for any keyword of
// their choosing, with no owner involvement: T1 from their own y, T2 =
// PK_DO^{r_i}. Also shows the index's C2 is reconstructible from public keys
// plus r_i, reducing the search equation to a keyword-only check.
AttackReport demo_shared_r_forgery(const PublicParams& params, const KeywordUniverse& universe,
                                   const Scalar& r_i, const OwnerPublicKey& owner_pub,
                                   const UserKeyMaterial& malicious_user,
                                   const std::string& forged_keyword, const EncryptedIndex& index);

// The flip side: if r is NOT shared, search breaks. Index fixed under the
// owner's r_i; each trial draws an independent r* for the trapdoor over the
// same keyword and must fail to match. A control with r* = r_i must match.
AttackReport demo_mismatched_r_failure(const PublicParams& params, const KeywordUniverse& universe,
                                       const OwnerKeyMaterial& owner, const UserKeyMaterial& user,
                                       const std::string& keyword, std::size_t trials,
                                       RandomSource& rng);

// Decrypt documents using the key published in the public parameters.
// Hardened parameters carry no key, so the report fails with
// "no key in public parameters".
AttackReport attack_public_key_decrypt(const PublicParams& params,
                                       const std::vector<std::vector<std::uint8_t>>& ciphertexts);

}  // namespace kga
