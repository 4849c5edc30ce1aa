#pragma once

#include "kgalab/attacks.hpp"
#include "kgalab/prmkr.hpp"

namespace kga {

// Hardened variant: a key authority holds a master secret α, folds it into
// both C1 (via trusted owners) and the user's blinded secrets, delivers
// r_i-dependent search material as a credential g^{x·r_i} instead of r_i
// itself, and keeps the document key out of the public parameters. The search
// equation is unchanged; both sides now carry exponent H(w)·x·α·y·r_i.

struct MasterSecret {
    Scalar alpha;                        // nonzero; never serialized publicly
    std::map<std::string, Scalar> owner_r;  // registry of per-owner r_i

    Json secret_json() const;
    static MasterSecret from_secret_json(const Json& body);
};

struct HardenedUserKey {
    std::string id;
    std::vector<Scalar> y_blinded;     // ŷ_l = y_l · α   (y_l itself is discarded)
    std::vector<GroupElement> pk;      // g^{y_l}

    Json secret_json() const;
    Json public_json() const;
    static HardenedUserKey from_secret_json(const Json& body, const PublicParams& params);
};

struct OwnerSearchCredential {
    std::string owner_id;
    std::vector<GroupElement> v;  // V_t = g^{x_t · r_i}; r_i never leaves the authority

    Json to_json() const;  // stored with "secret":true — for authorized users only
    static OwnerSearchCredential from_json(const Json& body, const PublicParams& params);
};

std::pair<PublicParams, MasterSecret> h_setup(int security_level, RandomSource& rng,
                                              bool transcripts = false);

// Registers the owner's r_i with the authority. Owners are created with the
// baseline keygen; enrollment is what admits them to the hardened system.
void h_register_owner(MasterSecret& msk, const OwnerKeyMaterial& owner);

HardenedUserKey h_keygen_user(const MasterSecret& msk, const PublicParams& params, std::size_t q,
                              RandomSource& rng, const std::string& id = "user");

// Builds the user's search credential for one owner: V_t = PK_{DO,t}^{r_i}.
OwnerSearchCredential h_enroll_owner(const MasterSecret& msk, const PublicParams& params,
                                     const OwnerPublicKey& owner_pub);

// C1 = g^{H(w)·x·α}, C2 = PK_U^{r_i}. The owner is trusted with α.
EncryptedIndex h_index_gen(const PublicParams& params, const KeywordUniverse& universe,
                           const std::vector<KeywordPosting>& postings,
                           const OwnerKeyMaterial& owner, const UserPublicKey& user_pub,
                           const Scalar& alpha);

// T1 = g^{H(w')·ŷ}, T2 = V_{h'}. The user touches neither r_i nor α.
Trapdoor h_trapdoor_gen(const PublicParams& params, const KeywordUniverse& universe,
                        const std::vector<std::string>& query, const HardenedUserKey& user,
                        const OwnerSearchCredential& credential);

// Identical decision procedure to the baseline; schemas must both be hardened.
MatchResult h_search(const EncryptedIndex& index, const Trapdoor& trapdoor);

}  // namespace kga
