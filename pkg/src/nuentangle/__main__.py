from nuentangle.cli import main

raise SystemExit(main())
