CORRCLUST 1
N 3 K 1 TAU 1
MU 0 0 0
E 0 1 1 0
E 0 2 1 zero
E 1 2 0 1
