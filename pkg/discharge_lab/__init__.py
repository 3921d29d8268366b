__version__ = "0.1.0"
default_app_config = "discharge_lab.apps.Config"
