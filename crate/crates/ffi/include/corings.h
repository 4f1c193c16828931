#ifndef CORINGS_H
#define CORINGS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `Fail` is a mathematical failure, `Structural` malformed input.
 */
typedef enum CoringsStatus {
  CoringsStatus_Ok = 0,
  CoringsStatus_Fail = 1,
  CoringsStatus_Structural = 2,
  CoringsStatus_NullPointer = 3,
  CoringsStatus_InvalidUtf8 = 4,
  CoringsStatus_Panic = 5,
} CoringsStatus;

/**
 * A parsed interchange document.
 */
typedef struct CoringsDocument CoringsDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread; owned by the library.
 */
const char *corings_last_error(void);

/**
 * Parses `text` into a new document handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum CoringsStatus corings_document_parse(const char *text, struct CoringsDocument **out);

/**
 * Releases a document handle; null is ignored.
 *
 * # Safety
 * `doc` must come from [`corings_document_parse`] and not be used afterwards.
 */
void corings_document_free(struct CoringsDocument *doc);

/**
 * Writes the canonical text of `doc` to `out`.
 *
 * # Safety
 * `doc` must be a live handle and `out` a valid pointer.
 */
enum CoringsStatus corings_document_serialise(const struct CoringsDocument *doc, char **out);

/**
 * Checks the subject of `doc` and writes the JSON report to `out`. Returns
 * `Ok` on pass, `Fail` otherwise, `Structural` when the document does not
 * describe a valid object shape.
 *
 * # Safety
 * `doc` must be a live handle and `out` a valid pointer.
 */
enum CoringsStatus corings_document_check(const struct CoringsDocument *doc, char **out);

/**
 * Runs the command line with `argc` arguments (program name first), storing the
 * exit code in `code` and standard output in `out`.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; `code` and `out` must be valid.
 */
enum CoringsStatus corings_run(int argc, const char *const *argv, int *code, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void corings_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CORINGS_H */
