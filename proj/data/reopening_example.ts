ts-format 1
# Six-state instance on which dynA* without re-evaluation reopens D.
# Labels are named after their cost.
label c1 1
label c2 2
label c3 3
label c5 5
label c6 6
label c8 8
state A B C D E F
init A
goal F
trans A c1 B
trans A c2 C
trans A c8 F
trans A c6 D
trans B c5 D
trans C c1 E
trans D c3 F
trans E c1 D
