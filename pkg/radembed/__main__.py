from radembed.main import main

main()
