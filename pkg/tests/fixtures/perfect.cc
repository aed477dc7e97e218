CORRCLUST 1
# two positive cliques {0,1} and {2,3}, negative across
N 4 K 4 TAU 1
MU 0 0 0 0
E 0 1 1 0
E 2 3 1 0
E 0 2 0 1
E 0 3 0 1
E 1 2 0 1
E 1 3 0 1
