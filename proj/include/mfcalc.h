/* C interface to the matrix factorization calculator. All functions are
 * thread-compatible: distinct sessions may be used from distinct threads. */
#ifndef MFCALC_H
#define MFCALC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mfc_session mfc_session;

typedef enum {
  MFC_OK = 0,
  MFC_ERROR_INVALID_ARGUMENT = -1,
  MFC_ERROR_PARSE = -2,        /* syntax or semantic problem-file error */
  MFC_ERROR_CHECK_FAILED = -3, /* command ran; a verification failed */
  MFC_ERROR_IO = -4,
  MFC_ERROR_INTERNAL = -5
} mfc_status;

const char* mfc_version(void);

/* Opens a session from problem-file text (may be empty for commands that
 * need no problem file, e.g. "corpus"). A session handle is returned in
 * *out_session even on parse errors so the message can be retrieved with
 * mfc_session_error; close it either way. */
int mfc_session_open(const char* problem_text, mfc_session** out_session);
int mfc_session_open_file(const char* path, mfc_session** out_session);
void mfc_session_close(mfc_session* s);

/* Last error message for this session; never NULL, empty when no error. */
const char* mfc_session_error(const mfc_session* s);

/* Runs a command (verify | hom | exactness | coker | stabilize | support |
 * equivariant | pushforward | corpus). options_json may be NULL or a JSON
 * object of command options. On MFC_OK or MFC_ERROR_CHECK_FAILED a JSON
 * report is returned in *out_report_json; free it with mfc_string_free. */
int mfc_run(mfc_session* s, const char* command, const char* options_json,
            char** out_report_json);

/* Canonical serialization of the loaded problem file. */
int mfc_session_serialize(mfc_session* s, char** out_text);

void mfc_string_free(char* p);

#ifdef __cplusplus
}
#endif

#endif /* MFCALC_H */
