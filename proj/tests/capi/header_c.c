/* The public header must compile as C. */
#include <stdio.h>

#include "wcat.h"

int main(void) {
  wcat_weight* w = NULL;
  char* out = NULL;
  if (wcat_weight_parse("preset:ones", &w) != WCAT_OK) return 1;
  if (wcat_compute(w, 3, 2, 0, &out) != WCAT_OK) return 1;
  printf("%s\n", out);
  wcat_string_free(out);
  wcat_weight_free(w);
  return 0;
}
