from src.utils.config_loader import load_settings
