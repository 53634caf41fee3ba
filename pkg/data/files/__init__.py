from data.files.key_file import decode_key_file, encode_key_file, read_key_file, write_key_file
from data.files.container import decode_container, encode_container, read_container, write_container
from data.files.model_file import decode_model, encode_model, read_model, write_model
from data.files.wav_file import read_wav, write_wav

__all__ = [
    'decode_key_file', 'encode_key_file', 'read_key_file', 'write_key_file',
    'decode_container', 'encode_container', 'read_container', 'write_container',
    'decode_model', 'encode_model', 'read_model', 'write_model',
    'read_wav', 'write_wav'
]
