ts-format 1
# Four-state running example: A -x-> B -y-> C -x-> D and A -y-> C.
label x 1
label y 2
state A B C D
init A
goal D
trans A x B
trans A y C
trans B y C
trans C x D
