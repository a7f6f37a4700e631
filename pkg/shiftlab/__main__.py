from shiftlab.main import main

main()
