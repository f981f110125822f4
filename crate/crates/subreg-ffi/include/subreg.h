/* C interface for the subreg library.
 *
 * Matches the exported surface of the subreg-ffi crate; regenerate with
 * cbindgen when the Rust surface changes (see cbindgen.toml).
 *
 * Memory rules: strings written through `char **out` parameters are
 * allocated by the library and must be released with subreg_string_free;
 * handles must be released with their matching *_free function. Passing
 * NULL to any free function is a no-op.
 */

#ifndef SUBREG_H
#define SUBREG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handle to a validated Coxeter diagram. */
typedef struct SubregDiagram SubregDiagram;

/* Opaque handle to an element of the subregular ring. */
typedef struct SubregElement SubregElement;

/* Status codes returned by every fallible function. */
typedef enum SubregStatus {
  /* The call succeeded. */
  SubregStatusOk = 0,
  /* A required pointer argument was null. */
  SubregStatusNullPointer = 1,
  /* A string argument was not valid UTF-8. */
  SubregStatusInvalidUtf8 = 2,
  /* The diagram JSON could not be parsed or validated. */
  SubregStatusParseError = 3,
  /* A word or generator was rejected by the library. */
  SubregStatusDomainError = 4,
} SubregStatus;

/* Library version as a static string; do not free. */
const char *subreg_version(void);

/* Parses a diagram from its JSON description:
 *   {"generators": [labels...], "m": [[a, b, weight], ...]}
 * with weight an integer >= 2 or the string "inf". On success writes a
 * handle to `out`; release it with subreg_diagram_free. */
SubregStatus subreg_diagram_parse_json(const char *json, SubregDiagram **out);

/* Releases a diagram handle. */
void subreg_diagram_free(SubregDiagram *d);

/* Number of generators, or 0 when the handle is null. */
uint32_t subreg_diagram_rank(const SubregDiagram *d);

/* Whether `word` is the unique reduced word of a cell element:
 * 1 yes, 0 no, -1 on error. */
int32_t subreg_is_subregular(const SubregDiagram *d, const char *word);

/* Enumerates cell elements up to `max_len` as a newline-joined string,
 * restricted to a box when both `box_start` and `box_end` are non-null.
 * Release the string with subreg_string_free. */
SubregStatus subreg_enumerate(const SubregDiagram *d,
                              uint32_t max_len,
                              const char *box_start,
                              const char *box_end,
                              char **out);

/* Multiplies the basis elements of two words. On success writes an element
 * handle to `out`; release it with subreg_element_free. */
SubregStatus subreg_mul(const SubregDiagram *d,
                        const char *x,
                        const char *y,
                        SubregElement **out);

/* Renders an element in the canonical `c*word + ...` syntax (`0` for the
 * zero element). Release the string with subreg_string_free. */
SubregStatus subreg_element_render(const SubregElement *e, char **out);

/* Number of basis terms with nonzero coefficient. */
uint64_t subreg_element_term_count(const SubregElement *e);

/* Releases an element handle. */
void subreg_element_free(SubregElement *e);

/* Classifies the box at the given generator label: writes the Verlinde
 * weight to `out_weight` when the box is finite, 0 when it is infinite. */
SubregStatus subreg_classify_fusion(const SubregDiagram *d,
                                    const char *gen_label,
                                    uint32_t *out_weight);

/* Releases a string allocated by this library. */
void subreg_string_free(char *s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SUBREG_H */
