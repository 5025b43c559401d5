/* C interface for the nashimpl toolkit (nashimpl-ffi).
 *
 * Maintained by hand in lockstep with src/lib.rs; the smoke tests compile
 * this header and call every function through the C ABI.
 *
 * Conventions:
 *  - Handles are opaque; create via the constructors, release with the
 *    matching *_free. Freeing NULL is a no-op.
 *  - Fallible calls return NiStatus. On anything but NI_OK the
 *    out-parameters are untouched and ni_last_error_message() describes the
 *    failure (thread-local, valid until the next call on the same thread).
 *  - Outcome sets are written as ascending 1-based indices. If the buffer
 *    is too small the call returns NI_BUFFER_TOO_SMALL and stores the
 *    required length in *written.
 *  - Players are 0-based, outcomes 1-based.
 */

#ifndef NASHIMPL_H
#define NASHIMPL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum NiStatus {
  NI_OK = 0,
  NI_NULL_POINTER = 1,
  NI_INVALID_UTF8 = 2,
  NI_PARSE_ERROR = 3,
  NI_INVALID_ARGUMENT = 4,
  NI_GUARD_LIMIT = 5,
  NI_BUFFER_TOO_SMALL = 6,
  NI_INTERNAL_PANIC = 7,
} NiStatus;

/* Opaque preference profile (n weak orders over m outcomes). */
typedef struct NiProfile NiProfile;

/* Opaque decisive-pair assignment (one outcome pair per player). */
typedef struct NiAssignment NiAssignment;

/* Opaque finite game form (naming mechanism or two-player matrix). */
typedef struct NiGameForm NiGameForm;

/* Library version string; static storage, do not free. */
const char *ni_version(void);

/* Description of the most recent failure on this thread; do not free. */
const char *ni_last_error_message(void);

/* Frees strings returned by ni_profile_format. */
void ni_string_free(char *text);

/* ---- profiles ---------------------------------------------------------- */

/* Parses the line-oriented profile format:
 *   outcomes: 6
 *   players: 3
 *   pref 1: 4 > 2 > 1 = 3 > 5 > 6
 */
NiStatus ni_profile_parse(const char *text, NiProfile **out);
void ni_profile_free(NiProfile *profile);
uint32_t ni_profile_players(const NiProfile *profile);
uint32_t ni_profile_outcomes(const NiProfile *profile);
NiStatus ni_profile_format(const NiProfile *profile, char **out);

/* ---- decisive-pair assignments ----------------------------------------- */

/* Canonical pairing: player i (1-based) owns {2i-1, 2i}; needs
 * outcomes >= 2 * players. */
NiStatus ni_assignment_canonical(uint32_t players, uint32_t outcomes,
                                 NiAssignment **out);
/* Pair syntax "1,2;3,4;5,6" in player order. */
NiStatus ni_assignment_parse(const char *pairs, uint32_t outcomes,
                             NiAssignment **out);
void ni_assignment_free(NiAssignment *assignment);
uint32_t ni_assignment_players(const NiAssignment *assignment);
uint32_t ni_assignment_outcomes(const NiAssignment *assignment);
bool ni_assignment_is_disjoint(const NiAssignment *assignment);

/* ---- the liberal rule --------------------------------------------------- */

/* From each player's pair, every member the player weakly prefers to the
 * other. Requires a disjoint assignment matching the profile's dimensions. */
NiStatus ni_liberal_rule(const NiAssignment *assignment,
                         const NiProfile *profile, uint32_t *buffer,
                         size_t capacity, size_t *written);

/* ---- game forms --------------------------------------------------------- */

/* The naming mechanism; requires a disjoint assignment of at least three
 * pairs. Each player simultaneously names one member of their pair and one
 * player; an all-but-one consensus player's named outcome wins, otherwise
 * the lowest-indexed player's does. */
NiStatus ni_game_form_liberal(const NiAssignment *assignment,
                              NiGameForm **out);

/* Parses the matrix game-form format:
 *   outcomes: 4
 *   rows: 2
 *   cols: 2
 *   row 1: 1 1
 *   row 2: 2 3
 */
NiStatus ni_game_form_matrix_parse(const char *text, NiGameForm **out);
void ni_game_form_free(NiGameForm *game_form);
uint32_t ni_game_form_players(const NiGameForm *game_form);

/* ---- analysis ----------------------------------------------------------- */

/* Pure Nash equilibrium outcomes by exhaustive scan; guard_limit of 0
 * selects the library default (10^7 strategy profiles). */
NiStatus ni_equilibrium_outcomes(const NiGameForm *game_form,
                                 const NiProfile *profile,
                                 uint64_t guard_limit, uint32_t *buffer,
                                 size_t capacity, size_t *written);

/* Checks that the naming mechanism's equilibrium outcomes coincide with the
 * liberal rule on `samples` seeded profiles plus a deterministic
 * adversarial list. pairs may be NULL for the canonical assignment. */
NiStatus ni_verify_liberal(uint32_t players, uint32_t outcomes,
                           const char *pairs, uint64_t samples, uint64_t seed,
                           uint64_t guard_limit, uint64_t *tested,
                           uint64_t *violations);

/* For a non-disjoint assignment: the outcome shared by two pairs together
 * with the players (0-based) whose decisiveness forces it in and out.
 * Fails with NI_INVALID_ARGUMENT on disjoint assignments. */
NiStatus ni_overlap_witness(const NiAssignment *assignment,
                            uint32_t *shared_outcome,
                            uint32_t *forced_in_player,
                            uint32_t *forced_out_player);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NASHIMPL_H */
