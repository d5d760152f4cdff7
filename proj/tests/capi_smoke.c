/* Builds against the public header as plain C and exercises a few calls. */
#include <math.h>
#include <stdio.h>

#include "arenstorf/arenstorf.h"

int main(void) {
  arenstorf_c2_estimate est;
  uint64_t count = 0;

  if (arenstorf_twin_constant(7, 1, &est) != ARENSTORF_OK) return 1;
  if (fabs(est.value - 1.3671875) > 1e-15) return 2;
  if (arenstorf_count_twins(100, 1, &count) != ARENSTORF_OK || count != 8) return 3;
  if (arenstorf_twin_constant(1, 1, &est) != ARENSTORF_E_DOMAIN) return 4;
  printf("c api smoke ok: %s\n", arenstorf_last_error());
  return 0;
}
