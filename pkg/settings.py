# settings.py
# User overrides for utils/config.py defaults. Only list the keys you change.

SETTINGS = {
    "system": {
        "CHECK_DEPENDENCIES": False,
    },

    # +–––––––––––––––––––––––––––––––––––––––––––+
    # | Subcommand defaults (flags still win)     |
    # +–––––––––––––––––––––––––––––––––––––––––––+
    "defaults": {
        "ALPHA": 2.5,
        "BETA": 1.0,
        "K_MIN": 0.1,
        "K_MAX": 8.0,
        "N": 200,
    },

    "export": {
        "OUT_DIR": "data",
        "FORMAT": "csv",
    },

    "oracle": {
        "METHOD": "numerov",
        "STEP": 0.004,
    },

    "parallel": {
        "WORKERS": 4,
    },
}
